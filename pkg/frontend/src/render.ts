/**
 * Canvas floor plan and the DOM side panels. Pure functions of the view
 * state: call draw(state) after every reducer step.
 */

import type { ViewState } from "./state.js";
import { nfcEnabled, radarTrend } from "./state.js";

const TAG_COLORS: Record<string, string> = {
  "BLE-AC": "#e0b400",
  "UWB-RAW": "#2c7fd4",
};

export interface Panels {
  canvas: HTMLCanvasElement;
  status: HTMLElement;
  tagTable: HTMLElement;
  radarBox: HTMLElement;
  inventoryList: HTMLElement;
  nfcButton: HTMLButtonElement;
}

export interface Actions {
  onBuzz: (tagId: string) => void;
  onRadar: (tagId: string) => void;
}

const radarHistory: number[] = [];

export function noteRadarSample(meters: number | null): void {
  if (meters !== null) {
    radarHistory.push(meters);
    if (radarHistory.length > 16) radarHistory.shift();
  }
}

export function resetRadarHistory(): void {
  radarHistory.length = 0;
}

export function draw(state: ViewState, panels: Panels, actions: Actions): void {
  drawFloorPlan(state, panels.canvas);
  drawStatus(state, panels.status);
  drawTagTable(state, panels.tagTable, actions);
  drawRadar(state, panels.radarBox);
  drawInventory(state, panels.inventoryList);
  panels.nfcButton.disabled = !nfcEnabled(state);
}

function scaleFor(state: ViewState, canvas: HTMLCanvasElement): number {
  if (!state.bounds) return 1;
  return Math.min(canvas.width / state.bounds[0], canvas.height / state.bounds[1]);
}

function drawFloorPlan(state: ViewState, canvas: HTMLCanvasElement): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!state.bounds) {
    ctx.fillStyle = "#888";
    ctx.font = "16px sans-serif";
    ctx.fillText("no scenario loaded", 20, 30);
    return;
  }
  const s = scaleFor(state, canvas);
  const H = state.bounds[1] * s;
  const toX = (x: number) => x * s;
  const toY = (y: number) => H - y * s; // world y grows upward

  ctx.fillStyle = "#f7f5ef";
  ctx.fillRect(0, 0, state.bounds[0] * s, H);

  for (const region of state.regions) {
    const [x1, y1, x2, y2] = region.rect;
    ctx.fillStyle = region.nlos ? "rgba(120,120,140,0.25)" : "rgba(120,180,120,0.15)";
    ctx.fillRect(toX(x1), toY(y2), (x2 - x1) * s, (y2 - y1) * s);
    ctx.fillStyle = "#667";
    ctx.font = "11px sans-serif";
    ctx.fillText(region.name, toX(x1) + 3, toY(y2) + 12);
  }

  ctx.strokeStyle = "#333";
  ctx.lineWidth = 3;
  for (const [x1, y1, x2, y2] of state.walls) {
    ctx.beginPath();
    ctx.moveTo(toX(x1), toY(y1));
    ctx.lineTo(toX(x2), toY(y2));
    ctx.stroke();
  }
  ctx.strokeStyle = "#555";
  ctx.lineWidth = 2;
  ctx.strokeRect(0, 0, state.bounds[0] * s, H);

  // located tags only: hidden tags stay hidden until the hunt reaches them
  for (const tag of state.located) {
    const level = state.buzzLevels[tag.tag_id] ?? 0;
    const pulse = 6 + level * 14;
    ctx.beginPath();
    ctx.fillStyle = TAG_COLORS[tag.model] ?? "#c55";
    ctx.arc(toX(tag.x), toY(tag.y), pulse, 0, Math.PI * 2);
    ctx.fill();
    ctx.fillStyle = "#222";
    ctx.font = "10px monospace";
    ctx.fillText(tag.tag_id.slice(-4), toX(tag.x) + pulse + 2, toY(tag.y));
  }

  // debug hints: a coarse-distance ring per heard tag around the avatar
  if (state.revealHints && state.avatar) {
    ctx.setLineDash([4, 4]);
    ctx.lineWidth = 1;
    for (const row of state.tags) {
      ctx.strokeStyle = TAG_COLORS[row.model] ?? "#c55";
      ctx.beginPath();
      ctx.arc(
        toX(state.avatar.x),
        toY(state.avatar.y),
        row.coarse_distance * s,
        0,
        Math.PI * 2,
      );
      ctx.stroke();
    }
    ctx.setLineDash([]);
  }

  if (state.avatar) {
    ctx.beginPath();
    ctx.fillStyle = "#d43f3f";
    ctx.arc(toX(state.avatar.x), toY(state.avatar.y), 6, 0, Math.PI * 2);
    ctx.fill();
    const pulseLevel = Math.max(0, ...Object.values(state.buzzLevels));
    if (pulseLevel > 0) {
      ctx.beginPath();
      ctx.strokeStyle = `rgba(212,63,63,${Math.min(pulseLevel, 1)})`;
      ctx.lineWidth = 2;
      ctx.arc(
        toX(state.avatar.x),
        toY(state.avatar.y),
        10 + 20 * Math.min(pulseLevel, 1),
        0,
        Math.PI * 2,
      );
      ctx.stroke();
    }
  }
}

function drawStatus(state: ViewState, el: HTMLElement): void {
  const bits = [`session ${state.sessionId?.slice(0, 8) ?? "-"}`];
  bits.push(state.scenario ? `scenario ${state.scenario}` : "no scenario");
  bits.push(`t=${state.clock.toFixed(1)}s`);
  el.textContent = bits.join(" | ");
  el.className = `status ${state.connection}`;
  if (state.connection !== "open") {
    el.textContent = `connection ${state.connection} - retrying... (${bits.join(" | ")})`;
  } else if (state.lastError) {
    el.textContent += ` | ${state.lastError}`;
  }
}

function drawTagTable(state: ViewState, el: HTMLElement, actions: Actions): void {
  el.replaceChildren();
  for (const row of state.tags) {
    const tr = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = `${row.tag_id} (${row.model})`;
    const dist = document.createElement("td");
    dist.textContent = `${row.coarse_distance.toFixed(1)} m`;
    const act = document.createElement("td");
    const button = document.createElement("button");
    if (row.model === "UWB-RAW") {
      button.textContent = "Activate Radar";
      button.onclick = () => actions.onRadar(row.tag_id);
    } else {
      button.textContent = "Activate Buzzer";
      button.onclick = () => actions.onBuzz(row.tag_id);
    }
    act.appendChild(button);
    tr.append(name, dist, act);
    el.appendChild(tr);
  }
}

function drawRadar(state: ViewState, el: HTMLElement): void {
  if (!state.radar) {
    el.textContent = "";
    return;
  }
  if (state.radar.status === "ok" && state.radar.meters !== null) {
    const trend = radarTrend(radarHistory);
    const arrow = trend === "closing" ? "v" : trend === "receding" ? "^" : "-";
    el.textContent = `${state.radar.meters.toFixed(1)} m ${arrow}`;
  } else {
    el.textContent = state.radar.status.replace(/_/g, " ");
  }
}

function drawInventory(state: ViewState, el: HTMLElement): void {
  el.replaceChildren();
  for (const item of state.inventory) {
    const li = document.createElement("li");
    const info = item.device_info;
    li.textContent = `${info.name ?? item.tag_id}: ${info.url ?? "?"}`;
    el.appendChild(li);
  }
}
