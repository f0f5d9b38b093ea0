import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { corpusPaths, escapeStationUrl, listPath, nextPath, prevPath,
         removePath, selectPath, setPath } from "../src/commands.js";

const BEATLES = "http://beatles.purestream.net/beatles.mp3";

describe("command path builders", () => {
  it("emits the documented add-preset path byte for byte", () => {
    expect(setPath(1, BEATLES)).toBe(`/1+${BEATLES}`);
  });

  it("emits the transport paths", () => {
    expect(listPath()).toBe("/");
    expect(prevPath()).toBe("/P");
    expect(nextPath()).toBe("/N");
  });

  it("emits select and remove paths per slot", () => {
    expect(selectPath(0)).toBe("/0");
    expect(selectPath(9)).toBe("/9");
    expect(removePath(4)).toBe("/4-");
  });

  it("escapes the characters the server-side decode would mangle", () => {
    expect(escapeStationUrl("http://h.example/a%b c")).toBe("http://h.example/a%25b%20c");
    expect(setPath(2, "http://a.example/x+y.mp3")).toBe("/2+http://a.example/x+y.mp3");
  });

  it("rejects slots outside 0..9", () => {
    expect(() => selectPath(10)).toThrow();
    expect(() => setPath(-1, BEATLES)).toThrow();
  });

  it("rejects non-http URLs up front", () => {
    expect(() => setPath(1, "ftp://files.example/a.mp3")).toThrow();
    expect(() => setPath(1, "")).toThrow();
  });
});

describe("shared contract corpus", () => {
  it("matches the committed corpus the gateway suite parses", () => {
    const path = fileURLToPath(new URL("./ui_command_corpus.json", import.meta.url));
    const committed = JSON.parse(readFileSync(path, "utf-8"));
    expect(corpusPaths()).toEqual(committed);
  });

  it("includes the documented example path", () => {
    expect(corpusPaths()).toContain(`/1+${BEATLES}`);
  });
});
