"""Emulated 3-line character display with leftward scrolling.

Lines longer than the visible width scroll left one character per tick,
with a 3-space gap before the text wraps around.  Short lines render
statically, space-padded to the exact width.  The model is immutable and
tick() is pure, so a timer can drive it live while tests step it by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

NUM_LINES = 3
SCROLL_GAP = "   "


@dataclass(frozen=True)
class DisplayLine:
    text: str = ""
    offset: int = 0


@dataclass(frozen=True)
class DisplayModel:
    lines: tuple[DisplayLine, DisplayLine, DisplayLine] = (
        DisplayLine(), DisplayLine(), DisplayLine())
    width: int = 16

    def __post_init__(self):
        if len(self.lines) != NUM_LINES:
            raise ValueError(f"display has exactly {NUM_LINES} lines")
        if self.width < 1:
            raise ValueError("width must be positive")


def set_line(model: DisplayModel, index: int, text: str) -> DisplayModel:
    """Replace one line's content; the scroll restarts when the text changes."""
    old = model.lines[index]
    if old.text == text:
        return model
    lines = list(model.lines)
    lines[index] = DisplayLine(text=text, offset=0)
    return replace(model, lines=tuple(lines))


def render_line(line: DisplayLine, width: int) -> str:
    if len(line.text) <= width:
        return line.text.ljust(width)
    extended = line.text + SCROLL_GAP
    window = extended[line.offset:line.offset + width]
    if len(window) < width:
        window += extended[:width - len(window)]
    return window


def render(model: DisplayModel) -> list[str]:
    """The three visible lines, each exactly ``width`` characters."""
    return [render_line(line, model.width) for line in model.lines]


def display_tick(model: DisplayModel) -> DisplayModel:
    """Advance every overlong line's scroll offset by one, wrapping after the gap."""
    lines = []
    for line in model.lines:
        if len(line.text) > model.width:
            cycle = len(line.text) + len(SCROLL_GAP)
            lines.append(replace(line, offset=(line.offset + 1) % cycle))
        else:
            lines.append(replace(line, offset=0))
    return replace(model, lines=tuple(lines))
