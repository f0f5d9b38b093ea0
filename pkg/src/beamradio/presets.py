"""Station preset store and the one-character URL-path command grammar.

The radio is driven from a browser address bar: ``/`` lists stations,
``/P`` and ``/N`` step through them, ``/<d>`` selects slot d, ``/<d>+URL``
stores a station and ``/<d>-`` removes one.  Ten slots, 0 through 9.
"""

from __future__ import annotations

import urllib.parse
from dataclasses import dataclass, replace

NUM_SLOTS = 10


class CommandError(ValueError):
    pass


class UnknownCommandError(CommandError):
    pass


class BadUrlError(CommandError):
    pass


class EmptySlotError(LookupError):
    pass


class NoStationsError(LookupError):
    pass


class StoreFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    pass


@dataclass(frozen=True)
class ListStations(Command):
    pass


@dataclass(frozen=True)
class PrevStation(Command):
    pass


@dataclass(frozen=True)
class NextStation(Command):
    pass


@dataclass(frozen=True)
class SelectStation(Command):
    slot: int


@dataclass(frozen=True)
class SetStation(Command):
    slot: int
    url: str


@dataclass(frozen=True)
class RemoveStation(Command):
    slot: int
    url: str | None = None


@dataclass(frozen=True)
class StationChanged:
    slot: int


@dataclass(frozen=True)
class CommandResponse:
    status: str
    body: str
    effect: StationChanged | None = None


@dataclass(frozen=True)
class PresetStore:
    """Ten optional station URLs plus the currently playing slot."""

    slots: tuple[str | None, ...] = (None,) * NUM_SLOTS
    current: int = 0

    def __post_init__(self):
        if len(self.slots) != NUM_SLOTS:
            raise ValueError(f"store must have exactly {NUM_SLOTS} slots")
        if not 0 <= self.current < NUM_SLOTS:
            raise ValueError("current slot out of range")
        for url in self.slots:
            if url is not None:
                _check_url(url)

    @classmethod
    def empty(cls) -> "PresetStore":
        return cls()

    def non_empty_slots(self) -> list[int]:
        return [i for i, url in enumerate(self.slots) if url is not None]


def _check_url(url: str) -> None:
    if not url:
        raise BadUrlError("empty URL")
    if any(c.isspace() or ord(c) < 0x20 for c in url):
        raise BadUrlError(f"whitespace or control character in URL {url!r}")
    split = urllib.parse.urlsplit(url)
    if split.scheme not in ("http", "https") or not split.netloc:
        raise BadUrlError(f"not an http(s) URL: {url!r}")


_DIGITS = "0123456789"


def parse_command(path: str) -> Command:
    """Parse a request path into a command.

    The path is percent-decoded first so URLs survive browser address
    bars.  Set splits at the first '+' only, keeping any later '+' in the
    URL.  Anything outside the grammar raises UnknownCommandError.
    """
    if not path.startswith("/"):
        raise UnknownCommandError(f"path must start with '/': {path!r}")
    body = urllib.parse.unquote(path)[1:]
    if body == "":
        return ListStations()
    if body == "P":
        return PrevStation()
    if body == "N":
        return NextStation()
    if body[0] in _DIGITS:
        slot = int(body[0])
        if len(body) == 1:
            return SelectStation(slot)
        sep, rest = body[1], body[2:]
        if sep == "+":
            _check_url(rest)
            return SetStation(slot, rest)
        if sep == "-":
            return RemoveStation(slot, rest or None)
    raise UnknownCommandError(f"unrecognized command path {path!r}")


def _escape(url: str) -> str:
    # Only what the decode-then-parse pipeline would otherwise mangle.
    return url.replace("%", "%25").replace(" ", "%20")


def render_command(cmd: Command) -> str:
    """Inverse of parse_command: the path that parses back to ``cmd``."""
    if isinstance(cmd, ListStations):
        return "/"
    if isinstance(cmd, PrevStation):
        return "/P"
    if isinstance(cmd, NextStation):
        return "/N"
    if isinstance(cmd, SelectStation):
        return f"/{cmd.slot}"
    if isinstance(cmd, SetStation):
        return f"/{cmd.slot}+{_escape(cmd.url)}"
    if isinstance(cmd, RemoveStation):
        return f"/{cmd.slot}-" + (_escape(cmd.url) if cmd.url else "")
    raise TypeError(f"not a command: {cmd!r}")


def format_listing(store: PresetStore) -> str:
    """Station listing, one line per filled slot, '*' marking the current one."""
    lines = []
    for i in store.non_empty_slots():
        marker = "*" if i == store.current else " "
        lines.append(f"{marker}{i}: {store.slots[i]}")
    return "\n".join(lines)


def _step(store: PresetStore, direction: int) -> int:
    filled = store.non_empty_slots()
    if not filled:
        raise NoStationsError("no stations configured")
    slot = store.current
    for _ in range(NUM_SLOTS):
        slot = (slot + direction) % NUM_SLOTS
        if store.slots[slot] is not None:
            return slot
    raise NoStationsError("no stations configured")


def apply_command(store: PresetStore, cmd: Command) -> tuple[PresetStore, CommandResponse]:
    """Apply one command, returning the updated store and a response.

    Prev/Next skip empty slots cyclically; a single filled slot wraps to
    itself.  Removing the currently playing slot advances to the next
    filled one, or leaves playback stopped when none remains.  Remove's
    trailing URL is accepted but ignored.
    """
    effect = None
    if isinstance(cmd, ListStations):
        new = store
    elif isinstance(cmd, SelectStation):
        if store.slots[cmd.slot] is None:
            raise EmptySlotError(f"slot {cmd.slot} is empty")
        new = replace(store, current=cmd.slot)
        effect = StationChanged(cmd.slot)
    elif isinstance(cmd, SetStation):
        _check_url(cmd.url)
        slots = list(store.slots)
        slots[cmd.slot] = cmd.url
        new = replace(store, slots=tuple(slots))
    elif isinstance(cmd, RemoveStation):
        had_url = store.slots[cmd.slot] is not None
        slots = list(store.slots)
        slots[cmd.slot] = None
        new = replace(store, slots=tuple(slots))
        if had_url and cmd.slot == store.current:
            remaining = new.non_empty_slots()
            if remaining:
                nxt = _step(new, +1)
                new = replace(new, current=nxt)
                effect = StationChanged(nxt)
            else:
                # Current stays put; the empty slot tells the caller to stop.
                effect = StationChanged(cmd.slot)
    elif isinstance(cmd, PrevStation):
        slot = _step(store, -1)
        new = replace(store, current=slot)
        effect = StationChanged(slot)
    elif isinstance(cmd, NextStation):
        slot = _step(store, +1)
        new = replace(store, current=slot)
        effect = StationChanged(slot)
    else:
        raise TypeError(f"not a command: {cmd!r}")
    return new, CommandResponse(status="ok", body=format_listing(new), effect=effect)


def save_store(store: PresetStore) -> bytes:
    """Serialize: one ``slot<TAB>url`` line per filled slot, then the current slot."""
    lines = [f"{i}\t{store.slots[i]}" for i in store.non_empty_slots()]
    lines.append(f"current\t{store.current}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_store(data: bytes) -> PresetStore:
    """Parse save_store output; load(save(s)) == s for every valid store."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise StoreFormatError(f"not UTF-8: {e}") from None
    slots: list[str | None] = [None] * NUM_SLOTS
    current = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line:
            continue
        if current is not None:
            raise StoreFormatError(f"line {lineno}: content after current line")
        key, sep, value = line.partition("\t")
        if not sep:
            raise StoreFormatError(f"line {lineno}: missing tab separator")
        if key == "current":
            if len(value) != 1 or value not in _DIGITS:
                raise StoreFormatError(f"line {lineno}: bad current slot {value!r}")
            current = int(value)
            continue
        if len(key) != 1 or key not in _DIGITS:
            raise StoreFormatError(f"line {lineno}: bad slot {key!r}")
        slot = int(key)
        if slots[slot] is not None:
            raise StoreFormatError(f"line {lineno}: duplicate slot {slot}")
        try:
            _check_url(value)
        except BadUrlError as e:
            raise StoreFormatError(f"line {lineno}: {e}") from None
        slots[slot] = value
    if current is None:
        raise StoreFormatError("missing current line")
    return PresetStore(slots=tuple(slots), current=current)
