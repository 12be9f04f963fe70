// Page wiring: build a Session against the service, paint the goban and
// side panels on every change, route clicks and control inputs.

import { ApiClient } from "./api.js";
import { drawGoban } from "./goban.js";
import { scoreLine } from "./render.js";
import { Session } from "./session.js";
import type { Overlays } from "./session.js";
import type { StoneColor } from "./types.js";

const params = new URLSearchParams(location.search);
const apiBase =
  params.get("api") ?? `${location.protocol}//${location.hostname}:8642`;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing #${id}`);
  return el as T;
};

const svg = $("goban") as unknown as SVGSVGElement;
const toastEl = $("toast");
const errorEl = $("load-error");
const scoreEl = $("score");
const statusEl = $("status");
const movesEl = $("top-moves");

let toastTimer: number | undefined;
function toast(message: string): void {
  toastEl.textContent = message;
  toastEl.classList.add("visible");
  window.clearTimeout(toastTimer);
  toastTimer = window.setTimeout(() => toastEl.classList.remove("visible"), 2500);
}

const session = new Session(new ApiClient(apiBase), {
  onToast: toast,
  onChange: redraw,
});

function redraw(): void {
  drawGoban(svg, session, (coord) => void session.play(coord));
  scoreEl.textContent = session.evaluation === null ? "" : scoreLine(session.evaluation);
  statusEl.textContent =
    `${session.mover} to play` +
    (session.historyLength > 0 ? `, ${session.historyLength} move(s) on record` : "");
  const mover = $(`mover-${session.mover}`) as HTMLInputElement;
  mover.checked = true;

  movesEl.replaceChildren();
  session.topMoves().forEach((move, rank) => {
    const li = document.createElement("li");
    li.textContent =
      `#${rank + 1} (${move.col}, ${move.row})  score ${move.score.toFixed(3)}` +
      `  pct ${move.percentile}`;
    li.addEventListener("click", () => void session.play({ col: move.col, row: move.row }));
    movesEl.appendChild(li);
  });
}

function showLoadError(message: string): void {
  errorEl.textContent = message;
  errorEl.classList.toggle("visible", message !== "");
}

$("new-board").addEventListener("click", () => {
  const size = parseInt(($("size") as HTMLSelectElement).value, 10);
  showLoadError("");
  session
    .loadPosition({ size, black: [], white: [] })
    .catch((e) => showLoadError(String(e.message ?? e)));
});

$("load-sgf").addEventListener("click", () => {
  const text = ($("sgf-text") as HTMLTextAreaElement).value;
  showLoadError("");
  session.loadPosition(text).catch((e) => showLoadError(String(e.message ?? e)));
});

$("undo").addEventListener("click", () => void session.undo());

for (const color of ["black", "white"] as StoneColor[]) {
  $(`mover-${color}`).addEventListener("change", () => void session.setMover(color));
}

const overlayNames: (keyof Overlays)[] = [
  "heatmap",
  "strengths",
  "instability",
  "topMoves",
  "quadrupole",
];
for (const name of overlayNames) {
  const box = $(`overlay-${name}`) as HTMLInputElement;
  box.checked = session.overlays[name];
  box.addEventListener("change", () => session.toggleOverlay(name, box.checked));
}

session
  .loadPosition({ size: 9, black: [], white: [] })
  .catch((e) => showLoadError(`service unreachable at ${apiBase}: ${e.message ?? e}`));
