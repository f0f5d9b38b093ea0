"""Tour of the station command grammar and the persistent preset store.

Every interaction with the radio is a URL path: this script parses the
paths a browser would send, applies them to a store and prints the
resulting listing after each step, ending with the on-disk format.
"""

from beamradio import PresetStore, apply_command, parse_command, save_store

store = PresetStore.empty()

SCRIPT = [
    "/1+http://beatles.purestream.net/beatles.mp3",
    "/4+http://jazz.example/smooth.mp3",
    "/7+http://news.example/talk.mp3",
    "/",       # list
    "/4",      # select slot 4
    "/N",      # next non-empty slot (7)
    "/N",      # wraps around to 1
    "/P",      # back to 7
    "/4-",     # remove slot 4
    "/",
]

for path in SCRIPT:
    cmd = parse_command(path)
    store, response = apply_command(store, cmd)
    print(f"GET {path}")
    print(f"  -> {cmd}")
    if response.effect:
        print(f"  -> now playing slot {response.effect.slot}")
    for line in response.body.splitlines():
        print(f"  | {line}")
    print()

print("persisted as:")
print(save_store(store).decode().rstrip())
