/**
 * Wire types for the /session socket, mirroring docs/schemas/.
 *
 * Only the builders below ever touch the socket, so the client cannot
 * send a message type the server does not document.
 */

export interface TagRow {
  tag_id: string;
  model: string;
  last_rssi: number;
  last_seen: number;
  coarse_distance: number;
}

export interface LocatedTag {
  tag_id: string;
  model: string;
  x: number;
  y: number;
}

export interface BuzzingTag {
  tag_id: string;
  level: number;
}

export interface InventoryItem {
  tag_id: string;
  device_info: Record<string, string>;
  read_at: number;
  read_position: number[];
}

export interface WorldState {
  type: "world_state";
  schema_version: number;
  session_id: string;
  scenario?: string;
  clock: number;
  bounds?: [number, number];
  walls: number[][];
  regions: { name: string; rect: number[]; nlos: boolean }[];
  reader?: { x: number; y: number };
  auto_tick: boolean;
  located: LocatedTag[];
  buzzing: BuzzingTag[];
  nfc_available: boolean;
  inventory: InventoryItem[];
}

export interface TagList {
  type: "tag_list";
  tags: TagRow[];
}

export interface Distance {
  type: "distance";
  tag_id: string;
  status: "ok" | "out_of_range" | "not_uwb";
  meters?: number;
}

export interface BuzzingPush {
  type: "buzzing";
  tag_id: string;
  level: number;
}

export interface NdefResult {
  type: "ndef_result";
  tag_id: string;
  device_info: Record<string, string>;
}

export interface ErrorMessage {
  type: "error";
  code: string;
  detail?: string;
}

export interface EventPush {
  type: "event";
  event: { t: number; kind: string; [key: string]: unknown };
}

export type ServerMessage =
  | WorldState
  | TagList
  | Distance
  | BuzzingPush
  | NdefResult
  | ErrorMessage
  | EventPush;

const SERVER_TYPES = new Set([
  "world_state",
  "tag_list",
  "distance",
  "buzzing",
  "ndef_result",
  "error",
  "event",
]);

/** Parse one socket frame; returns null for anything unrecognized. */
export function parseServer(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (
    typeof data !== "object" ||
    data === null ||
    typeof (data as { type?: unknown }).type !== "string"
  ) {
    return null;
  }
  const msg = data as { type: string };
  return SERVER_TYPES.has(msg.type) ? (msg as ServerMessage) : null;
}

// -- client messages ----------------------------------------------------------

export type ClientMessage =
  | { type: "hello"; session_id?: string }
  | { type: "load_scenario"; name?: string; document?: unknown; seed?: number }
  | { type: "move"; dx: number; dy: number }
  | { type: "step"; dt: number }
  | { type: "auto_tick"; enabled: boolean; hz?: number }
  | { type: "list_tags" }
  | { type: "buzz"; tag_id: string; password?: string }
  | { type: "radar"; tag_id: string }
  | { type: "nfc_read" }
  | { type: "save_inventory"; path?: string };

export const hello = (sessionId?: string): ClientMessage =>
  sessionId ? { type: "hello", session_id: sessionId } : { type: "hello" };

export const loadScenario = (name: string, seed?: number): ClientMessage =>
  seed === undefined
    ? { type: "load_scenario", name }
    : { type: "load_scenario", name, seed };

export const move = (dx: number, dy: number): ClientMessage => ({
  type: "move",
  dx,
  dy,
});

export const autoTick = (enabled: boolean, hz = 10): ClientMessage => ({
  type: "auto_tick",
  enabled,
  hz,
});

export const listTags = (): ClientMessage => ({ type: "list_tags" });

export const buzz = (tagId: string, password?: string): ClientMessage =>
  password === undefined
    ? { type: "buzz", tag_id: tagId }
    : { type: "buzz", tag_id: tagId, password };

export const radar = (tagId: string): ClientMessage => ({
  type: "radar",
  tag_id: tagId,
});

export const nfcRead = (): ClientMessage => ({ type: "nfc_read" });

export const saveInventory = (path?: string): ClientMessage =>
  path === undefined ? { type: "save_inventory" } : { type: "save_inventory", path };
