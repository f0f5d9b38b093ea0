/** Builders for the gateway's one-character command paths.
 *
 * The gateway percent-decodes paths before parsing, so the only characters
 * a station URL needs escaped are '%' itself and spaces.  Everything the
 * UI can emit must be accepted by the gateway's parser; corpusPaths()
 * enumerates representative output for the shared contract test.
 */

export function escapeStationUrl(url: string): string {
  return url.replace(/%/g, "%25").replace(/ /g, "%20");
}

function checkSlot(slot: number): void {
  if (!Number.isInteger(slot) || slot < 0 || slot > 9) {
    throw new Error(`slot must be 0..9, got ${slot}`);
  }
}

export function listPath(): string {
  return "/";
}

export function prevPath(): string {
  return "/P";
}

export function nextPath(): string {
  return "/N";
}

export function selectPath(slot: number): string {
  checkSlot(slot);
  return `/${slot}`;
}

export function setPath(slot: number, url: string): string {
  checkSlot(slot);
  if (!/^https?:\/\/\S+$/.test(url)) {
    throw new Error("station URL must be http(s) without whitespace");
  }
  return `/${slot}+${escapeStationUrl(url)}`;
}

export function removePath(slot: number): string {
  checkSlot(slot);
  return `/${slot}-`;
}

const SAMPLE_URLS = [
  "http://beatles.purestream.net/beatles.mp3",
  "https://radio.example/stream.mp3",
  "http://a.example/x+y.mp3",
  "http://host.example/odd%name.mp3",
  "http://host.example:8000/",
  "https://x.example/~user/set!(1).mp3",
];

/** Every path shape the dashboard can produce, for the parser contract test. */
export function corpusPaths(): string[] {
  const paths = [listPath(), prevPath(), nextPath()];
  for (let slot = 0; slot <= 9; slot++) {
    paths.push(selectPath(slot));
    paths.push(removePath(slot));
  }
  SAMPLE_URLS.forEach((url, i) => {
    paths.push(setPath((i + 1) % 10, url));
  });
  return paths;
}
