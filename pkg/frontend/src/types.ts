/** Mirror of the gateway's /api/status JSON schema. */
export interface StatusView {
  phase: "selecting" | "playing" | "idle" | "error";
  ant_rssi: (number | null)[];
  best_antenna: number | null;
  antenna_color: string | null;
  current_slot: number | null;
  station_url: string | null;
  stream_title: string | null;
  ip_address: string;
  display: string[];
}

const PHASES = ["selecting", "playing", "idle", "error"];

/** Pick only schema fields out of a status payload; unknown fields are ignored. */
export function parseStatus(raw: unknown): StatusView {
  const obj = (raw ?? {}) as Record<string, unknown>;
  const phase = PHASES.includes(obj.phase as string)
    ? (obj.phase as StatusView["phase"]) : "error";
  const antRssi = Array.isArray(obj.ant_rssi)
    ? obj.ant_rssi.map((v) => (typeof v === "number" ? v : null)) : [];
  const display = Array.isArray(obj.display)
    ? obj.display.map((l) => String(l ?? "")) : [];
  const num = (v: unknown) => (typeof v === "number" ? v : null);
  const str = (v: unknown) => (typeof v === "string" ? v : null);
  return {
    phase,
    ant_rssi: antRssi,
    best_antenna: num(obj.best_antenna),
    antenna_color: str(obj.antenna_color),
    current_slot: num(obj.current_slot),
    station_url: str(obj.station_url),
    stream_title: str(obj.stream_title),
    ip_address: str(obj.ip_address) ?? "",
    display,
  };
}

/** One row of the station listing returned by the root command endpoint. */
export interface StationRow {
  slot: number;
  url: string;
  current: boolean;
}
