"""beamradio: a switched-beam antenna web-radio gateway in software.

The package simulates a device with three switchable directional antennas
in a 2-D Wi-Fi environment, picks the best antenna by per-antenna RSSI
scanning, and then runs an internet-radio control plane: a ten-slot
station preset store driven by one-character URL commands, an ICY stream
client that demuxes titles from audio, and an emulated 3-line scrolling
display.
"""

from .client import StreamSession, open_stream, play
from .config import ConfigError, GatewayConfig, load_config, parse_environment
from .display import DisplayModel, display_tick, render, set_line
from .gateway import ANTENNA_COLORS, Gateway, antenna_indicator, boot
from .icy import (AudioChunk, EndOfStream, IcyDemuxer, IcyHeaders,
                  IcyProtocolError, TitleChange, TransportError, demux_icy,
                  find_mp3_frame_syncs, parse_icy_headers, parse_stream_title)
from .mockstream import MockIcyServer, build_icy_body, serve_mock_stream
from .presets import (Command, CommandResponse, ListStations, NextStation,
                      PresetStore, PrevStation, RemoveStation, SelectStation,
                      SetStation, apply_command, load_store, parse_command,
                      render_command, save_store)
from .rfmodel import (AccessPoint, AntennaPattern, RfEnvironment, ScanContext,
                      ScanEntry, default_patterns, load_pattern_csv,
                      pattern_gain, received_power, scan)
from .selector import (SelectionResult, SelectorConfig, SelectorState,
                       best_antenna, record_scan, run_selection)
from .sinks import BufferSink, FileSink, NullSink

__version__ = "0.1.0"
