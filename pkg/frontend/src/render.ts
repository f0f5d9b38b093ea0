/** Pure HTML renderers for the dashboard; no DOM access so tests stay simple. */

import { StationRow, StatusView } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Parse the text listing the command endpoint returns ("*1: url" lines). */
export function parseListing(body: string): StationRow[] {
  const rows: StationRow[] = [];
  for (const line of body.split("\n")) {
    const match = /^([* ])(\d): (.+)$/.exec(line);
    if (match) {
      rows.push({ slot: Number(match[2]), url: match[3], current: match[1] === "*" });
    }
  }
  return rows;
}

const RSSI_FLOOR = -100;

function barWidth(rssi: number): number {
  const clamped = Math.max(RSSI_FLOOR, Math.min(0, rssi));
  return Math.round(((clamped - RSSI_FLOOR) / -RSSI_FLOOR) * 100);
}

export function renderRssiBars(antRssi: (number | null)[], best: number | null): string {
  const rows = antRssi.map((rssi, i) => {
    const isBest = i === best;
    const width = rssi === null ? 0 : barWidth(rssi);
    const label = rssi === null ? "&mdash;" : `${rssi}&nbsp;dBm`;
    return `<div class="rssi-row${isBest ? " best" : ""}">`
      + `<span class="ant">ant ${i + 1}</span>`
      + `<span class="bar"><span class="fill" style="width:${width}%"></span></span>`
      + `<span class="dbm">${label}</span>`
      + `</div>`;
  });
  return rows.join("");
}

export function renderDisplay(lines: string[]): string {
  const shown = lines.slice(0, 3);
  while (shown.length < 3) shown.push("");
  return shown.map((l) => `<div class="oled-line">${escapeHtml(l)}</div>`).join("");
}

export function renderStatusPanel(status: StatusView): string {
  const color = status.antenna_color ?? "none";
  const dot = `<span class="dot ${escapeHtml(color)}" title="antenna indicator"></span>`;
  const antenna = status.best_antenna === null ? "&mdash;"
    : `antenna ${status.best_antenna + 1}`;
  const title = status.stream_title ? escapeHtml(status.stream_title) : "&mdash;";
  const station = status.station_url ? escapeHtml(status.station_url) : "&mdash;";
  return `<div class="phase phase-${status.phase}">${status.phase}</div>`
    + `<div class="indicator">${dot}${antenna}</div>`
    + `<div class="title">${title}</div>`
    + `<div class="station">${station}</div>`
    + `<div class="address">${escapeHtml(status.ip_address)}</div>`;
}

export function renderStations(rows: StationRow[]): string {
  if (rows.length === 0) {
    return `<div class="empty">no stations configured</div>`;
  }
  return rows.map((row) =>
    `<div class="station-row${row.current ? " current" : ""}" data-slot="${row.slot}">`
    + `<button class="select" data-slot="${row.slot}">${row.slot}</button>`
    + `<span class="url">${escapeHtml(row.url)}</span>`
    + `<button class="remove" data-slot="${row.slot}" title="remove">&times;</button>`
    + `</div>`).join("");
}

export function renderDisconnected(): string {
  return `<div class="banner">gateway unreachable &mdash; retrying</div>`;
}
