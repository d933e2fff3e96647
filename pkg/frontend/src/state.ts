/**
 * The single view-state record and the reducer that applies server
 * messages to it. Rendering reads this and nothing else, so replaying a
 * session's message stream reproduces the same view.
 */

import type {
  InventoryItem,
  LocatedTag,
  ServerMessage,
  TagRow,
} from "./protocol.js";

export type Connection = "connecting" | "open" | "closed";

export interface RadarReadout {
  tagId: string;
  status: "ok" | "out_of_range" | "not_uwb";
  meters: number | null;
}

export interface ViewState {
  connection: Connection;
  sessionId: string | null;
  scenario: string | null;
  clock: number;
  bounds: [number, number] | null;
  walls: number[][];
  regions: { name: string; rect: number[]; nlos: boolean }[];
  avatar: { x: number; y: number } | null;
  autoTick: boolean;
  tags: TagRow[];
  located: LocatedTag[];
  buzzLevels: Record<string, number>;
  radar: RadarReadout | null;
  inventory: InventoryItem[];
  nfcAvailable: boolean;
  lastError: string | null;
  revealHints: boolean;
}

export function initialState(): ViewState {
  return {
    connection: "connecting",
    sessionId: null,
    scenario: null,
    clock: 0,
    bounds: null,
    walls: [],
    regions: [],
    avatar: null,
    autoTick: false,
    tags: [],
    located: [],
    buzzLevels: {},
    radar: null,
    inventory: [],
    nfcAvailable: false,
    lastError: null,
    revealHints: false,
  };
}

/** Apply one server message; returns a new state (inputs untouched). */
export function applyServer(state: ViewState, msg: ServerMessage): ViewState {
  switch (msg.type) {
    case "world_state": {
      const buzzLevels: Record<string, number> = {};
      for (const entry of msg.buzzing) buzzLevels[entry.tag_id] = entry.level;
      return {
        ...state,
        sessionId: msg.session_id,
        scenario: msg.scenario ?? state.scenario,
        clock: msg.clock,
        bounds: msg.bounds ?? state.bounds,
        walls: msg.walls,
        regions: msg.regions,
        avatar: msg.reader ?? state.avatar,
        autoTick: msg.auto_tick,
        located: msg.located,
        buzzLevels,
        nfcAvailable: msg.nfc_available,
        inventory: msg.inventory,
        lastError: null,
      };
    }
    case "tag_list":
      // mirror the server rows exactly: same ids, same order
      return { ...state, tags: msg.tags };
    case "distance":
      return {
        ...state,
        radar: {
          tagId: msg.tag_id,
          status: msg.status,
          meters: msg.meters ?? null,
        },
      };
    case "buzzing":
      return {
        ...state,
        buzzLevels: { ...state.buzzLevels, [msg.tag_id]: msg.level },
      };
    case "ndef_result": {
      const entry: InventoryItem = {
        tag_id: msg.tag_id,
        device_info: msg.device_info,
        read_at: state.clock,
        read_position: state.avatar ? [state.avatar.x, state.avatar.y] : [],
      };
      return { ...state, inventory: [...state.inventory, entry] };
    }
    case "error":
      return { ...state, lastError: `${msg.code}: ${msg.detail ?? ""}` };
    case "event":
      if (msg.event.kind === "tone_stop") {
        // a stopped buzzer should not keep pulsing at its last level
        const levels = { ...state.buzzLevels };
        delete levels[String(msg.event.tag_id)];
        return { ...state, buzzLevels: levels };
      }
      return state;
    default:
      return state;
  }
}

export function setConnection(state: ViewState, connection: Connection): ViewState {
  return { ...state, connection };
}

export function toggleHints(state: ViewState): ViewState {
  return { ...state, revealHints: !state.revealHints };
}

/** Direction of travel suggested by consecutive radar readings. */
export function radarTrend(history: number[]): "closing" | "receding" | "steady" {
  if (history.length < 2) return "steady";
  const delta = history[history.length - 1] - history[history.length - 2];
  if (delta < -1e-9) return "closing";
  if (delta > 1e-9) return "receding";
  return "steady";
}

/** The NFC control is enabled only when the server says a tag is in reach. */
export function nfcEnabled(state: ViewState): boolean {
  return state.connection === "open" && state.nfcAvailable;
}
