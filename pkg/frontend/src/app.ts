/** DOM wiring: 1 Hz status polling plus command dispatch with inline errors. */

import { listPath, nextPath, prevPath, removePath, selectPath, setPath } from "./commands.js";
import { parseListing, renderDisconnected, renderDisplay, renderRssiBars,
         renderStations, renderStatusPanel } from "./render.js";
import { parseStatus } from "./types.js";

const $ = (id: string) => document.getElementById(id) as HTMLElement;

let pollFailures = 0;
let commandInFlight = false;

async function refreshStatus(): Promise<void> {
  try {
    const resp = await fetch("/api/status");
    if (!resp.ok) throw new Error(`status ${resp.status}`);
    const status = parseStatus(await resp.json());
    pollFailures = 0;
    $("banner-slot").innerHTML = "";
    $("status-panel").innerHTML = renderStatusPanel(status);
    $("rssi-bars").innerHTML = renderRssiBars(status.ant_rssi, status.best_antenna);
    $("oled").innerHTML = renderDisplay(status.display);
  } catch {
    pollFailures += 1;
    if (pollFailures >= 2) {
      $("banner-slot").innerHTML = renderDisconnected();
    }
  }
}

async function refreshStations(): Promise<void> {
  try {
    const resp = await fetch(listPath());
    if (!resp.ok) throw new Error(`status ${resp.status}`);
    $("stations").innerHTML = renderStations(parseListing(await resp.text()));
  } catch {
    // the poll banner already covers connectivity problems
  }
}

/** Send one command path; at most one request is in flight at a time. */
async function sendCommand(path: string, errorSlot: HTMLElement): Promise<void> {
  if (commandInFlight) return;
  commandInFlight = true;
  errorSlot.textContent = "";
  try {
    const resp = await fetch(path);
    const body = await resp.text();
    if (!resp.ok) {
      errorSlot.textContent = body.trim() || `error ${resp.status}`;
      return;
    }
    $("stations").innerHTML = renderStations(parseListing(body));
    void refreshStatus();
  } catch (err) {
    errorSlot.textContent = String(err);
  } finally {
    commandInFlight = false;
  }
}

function setupControls(): void {
  const transportError = $("transport-error");
  $("btn-prev").addEventListener("click", () => void sendCommand(prevPath(), transportError));
  $("btn-next").addEventListener("click", () => void sendCommand(nextPath(), transportError));

  $("stations").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const slot = Number(target.dataset.slot);
    if (target.classList.contains("select")) {
      void sendCommand(selectPath(slot), transportError);
    } else if (target.classList.contains("remove")) {
      void sendCommand(removePath(slot), transportError);
    }
  });

  const form = $("add-form") as HTMLFormElement;
  const addError = $("add-error");
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const slot = Number(($("add-slot") as HTMLSelectElement).value);
    const url = ($("add-url") as HTMLInputElement).value.trim();
    try {
      void sendCommand(setPath(slot, url), addError);
    } catch (err) {
      addError.textContent = err instanceof Error ? err.message : String(err);
    }
  });
}

window.addEventListener("DOMContentLoaded", () => {
  const slotSelect = $("add-slot") as HTMLSelectElement;
  for (let slot = 0; slot <= 9; slot++) {
    const option = document.createElement("option");
    option.value = String(slot);
    option.textContent = String(slot);
    slotSelect.append(option);
  }
  setupControls();
  void refreshStatus();
  void refreshStations();
  setInterval(() => void refreshStatus(), 1000);
  setInterval(() => void refreshStations(), 5000);
});
