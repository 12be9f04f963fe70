// SVG board renderer.  Full redraw on every state change; positions are
// small and the overlays come precomputed from render.ts.

import {
  heatColor,
  instabilityMarks,
  quadrupoleMarks,
  strengthLabels,
} from "./render.js";
import type { Session } from "./session.js";
import type { Coord } from "./types.js";

const CELL = 30;
const MARGIN = CELL;
const SVG_NS = "http://www.w3.org/2000/svg";

function make<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

const x = (col: number): number => MARGIN + col * CELL;
const y = (row: number): number => MARGIN + row * CELL;

export function drawGoban(
  svg: SVGSVGElement,
  session: Session,
  onClick: (coord: Coord) => void,
): void {
  const size = session.position.size;
  const extent = 2 * MARGIN + (size - 1) * CELL;
  svg.setAttribute("viewBox", `0 0 ${extent} ${extent}`);
  svg.replaceChildren();

  svg.appendChild(
    make("rect", { x: 0, y: 0, width: extent, height: extent, fill: "#d8b56a" }),
  );

  const ev = session.evaluation;
  if (ev !== null && session.overlays.heatmap) {
    for (const p of ev.points) {
      svg.appendChild(
        make("rect", {
          x: x(p.col) - CELL / 2,
          y: y(p.row) - CELL / 2,
          width: CELL,
          height: CELL,
          fill: heatColor(p.w),
          opacity: 0.55,
        }),
      );
    }
  }

  for (let i = 0; i < size; i++) {
    svg.appendChild(
      make("line", {
        x1: x(0), y1: y(i), x2: x(size - 1), y2: y(i),
        stroke: "#333", "stroke-width": 1,
      }),
    );
    svg.appendChild(
      make("line", {
        x1: x(i), y1: y(0), x2: x(i), y2: y(size - 1),
        stroke: "#333", "stroke-width": 1,
      }),
    );
  }

  for (const [stones, fill, stroke] of [
    [session.position.black, "#111", "#000"],
    [session.position.white, "#fafafa", "#666"],
  ] as const) {
    for (const c of stones) {
      svg.appendChild(
        make("circle", {
          cx: x(c.col), cy: y(c.row), r: CELL * 0.45,
          fill, stroke, "stroke-width": 1,
        }),
      );
    }
  }

  if (ev !== null && session.overlays.quadrupole) {
    for (const m of quadrupoleMarks(ev)) {
      if (m.value < 0.05) continue;
      const r = CELL * 0.12 + CELL * 0.18 * Math.min(1, m.value / 2);
      svg.appendChild(
        make("rect", {
          x: x(m.at.col) - r, y: y(m.at.row) - r,
          width: 2 * r, height: 2 * r,
          transform: `rotate(45 ${x(m.at.col)} ${y(m.at.row)})`,
          fill: "none", stroke: "#7b2fbf", "stroke-width": 1.5,
        }),
      );
    }
  }

  if (ev !== null && session.overlays.instability) {
    for (const m of instabilityMarks(ev)) {
      svg.appendChild(
        make("circle", {
          cx: x(m.at.col), cy: y(m.at.row),
          r: CELL * (0.08 + 0.3 * m.weight),
          fill: "rgba(220,40,40,0.45)",
        }),
      );
    }
  }

  if (ev !== null && session.overlays.strengths) {
    for (const label of strengthLabels(ev)) {
      const dark = label.block.color === "black";
      const t = make("text", {
        x: x(label.at.col), y: y(label.at.row) + 4,
        "text-anchor": "middle", "font-size": 10,
        "font-family": "monospace", fill: dark ? "#fff" : "#000",
      });
      t.textContent = label.text;
      t.classList.add("strength-label");
      svg.appendChild(t);
    }
  }

  if (session.ranking !== null && session.overlays.topMoves) {
    session.topMoves().forEach((move, rank) => {
      svg.appendChild(
        make("circle", {
          cx: x(move.col), cy: y(move.row), r: CELL * 0.38,
          fill: "rgba(30,110,220,0.25)", stroke: "#1e6edc", "stroke-width": 1,
        }),
      );
      const t = make("text", {
        x: x(move.col), y: y(move.row) + 4,
        "text-anchor": "middle", "font-size": 11, fill: "#0b3d91",
      });
      t.textContent = String(rank + 1);
      svg.appendChild(t);
    });
  }

  const hit = make("rect", {
    x: 0, y: 0, width: extent, height: extent,
    fill: "transparent", cursor: "pointer",
  });
  hit.addEventListener("click", (event: MouseEvent) => {
    const rect = svg.getBoundingClientRect();
    const scale = extent / rect.width;
    const col = Math.round(((event.clientX - rect.left) * scale - MARGIN) / CELL);
    const row = Math.round(((event.clientY - rect.top) * scale - MARGIN) / CELL);
    if (col >= 0 && col < size && row >= 0 && row < size) onClick({ col, row });
  });
  svg.appendChild(hit);
}
