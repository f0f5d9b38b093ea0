import { describe, expect, it } from "vitest";

import { escapeHtml, parseListing, renderDisconnected, renderDisplay,
         renderRssiBars, renderStations, renderStatusPanel } from "../src/render.js";
import { StatusView, parseStatus } from "../src/types.js";

const PLAYING: StatusView = {
  phase: "playing",
  ant_rssi: [-41, -41, -38],
  best_antenna: 2,
  antenna_color: "blue",
  current_slot: 1,
  station_url: "http://beatles.purestream.net/beatles.mp3",
  stream_title: "Hey Jude",
  ip_address: "127.0.0.1:8080",
  display: ["Hey Jude        ", "ttp://beatles.pu", "127.0.0.1:8080  "],
};

const ERROR: StatusView = {
  phase: "error",
  ant_rssi: [null, null, null],
  best_antenna: null,
  antenna_color: null,
  current_slot: null,
  station_url: null,
  stream_title: null,
  ip_address: "127.0.0.1:8080",
  display: ["no signal       ", "                ", "127.0.0.1:8080  "],
};

describe("playing state", () => {
  it("renders one bar per antenna with the best highlighted", () => {
    const html = renderRssiBars(PLAYING.ant_rssi, PLAYING.best_antenna);
    expect(html.match(/rssi-row/g)).toHaveLength(3);
    expect(html.match(/rssi-row best/g)).toHaveLength(1);
    expect(html).toContain("-38&nbsp;dBm");
  });

  it("shows phase, indicator color, title and station", () => {
    const html = renderStatusPanel(PLAYING);
    expect(html).toContain("phase-playing");
    expect(html).toContain("dot blue");
    expect(html).toContain("antenna 3");
    expect(html).toContain("Hey Jude");
    expect(html).toContain("beatles.purestream.net");
  });

  it("renders the three display lines verbatim", () => {
    const html = renderDisplay(PLAYING.display);
    expect(html.match(/oled-line/g)).toHaveLength(3);
    expect(html).toContain("ttp://beatles.pu");
  });
});

describe("error state", () => {
  it("renders empty bars and no best highlight", () => {
    const html = renderRssiBars(ERROR.ant_rssi, ERROR.best_antenna);
    expect(html.match(/rssi-row/g)).toHaveLength(3);
    expect(html).not.toContain("rssi-row best");
    expect(html).toContain("width:0%");
  });

  it("renders the error phase and a dash for the antenna", () => {
    const html = renderStatusPanel(ERROR);
    expect(html).toContain("phase-error");
    expect(html).toContain("&mdash;");
  });

  it("has a disconnected banner", () => {
    expect(renderDisconnected()).toContain("unreachable");
  });
});

describe("station listing", () => {
  it("parses marker, slot and url", () => {
    const rows = parseListing(" 1: http://a.example/one\n*4: http://b.example/four\n");
    expect(rows).toEqual([
      { slot: 1, url: "http://a.example/one", current: false },
      { slot: 4, url: "http://b.example/four", current: true },
    ]);
  });

  it("round-trips through renderStations with the current row marked", () => {
    const rows = parseListing("*2: http://x.example/a+b\n");
    const html = renderStations(rows);
    expect(html).toContain("station-row current");
    expect(html).toContain("http://x.example/a+b");
  });

  it("renders a hint when no stations exist", () => {
    expect(renderStations([])).toContain("no stations");
  });
});

describe("defensive parsing", () => {
  it("ignores unknown fields and fills missing ones", () => {
    const status = parseStatus({ phase: "playing", extra_field: 42, ant_rssi: [-50, null] });
    expect(status.phase).toBe("playing");
    expect(status.ant_rssi).toEqual([-50, null]);
    expect(status.best_antenna).toBeNull();
    expect((status as Record<string, unknown>).extra_field).toBeUndefined();
  });

  it("escapes markup in station titles", () => {
    expect(escapeHtml("<script>alert('x')</script>"))
      .toBe("&lt;script&gt;alert('x')&lt;/script&gt;");
  });
});
