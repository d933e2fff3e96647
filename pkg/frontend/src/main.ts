import { audioCue, TonePlayer } from "./audio.js";
import { SessionSocket, sessionUrl } from "./net.js";
import * as proto from "./protocol.js";
import { draw, noteRadarSample, Panels, resetRadarHistory } from "./render.js";
import {
  applyServer,
  initialState,
  setConnection,
  toggleHints,
  ViewState,
} from "./state.js";

const MOVE_STEP = 0.25;
const LIST_REFRESH_MS = 500;
const RADAR_POLL_MS = 500;

function panel<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function start(): void {
  const panels: Panels = {
    canvas: panel<HTMLCanvasElement>("floor"),
    status: panel("status"),
    tagTable: panel("tag-rows"),
    radarBox: panel("radar"),
    inventoryList: panel("inventory"),
    nfcButton: panel<HTMLButtonElement>("nfc"),
  };

  let state: ViewState = initialState();
  const player = new TonePlayer();
  let radarTarget: string | null = null;

  const actions = {
    onBuzz: (tagId: string) => socket.send(proto.buzz(tagId)),
    onRadar: (tagId: string) => {
      radarTarget = radarTarget === tagId ? null : tagId;
      resetRadarHistory();
      if (radarTarget) socket.send(proto.radar(radarTarget));
    },
  };

  const redraw = () => draw(state, panels, actions);

  const socket = new SessionSocket(sessionUrl(window.location), {
    onStatus: (status) => {
      state = setConnection(state, status);
      if (status === "open") {
        // a fresh session has no world; (re)load and start the clock
        socket.send(proto.loadScenario("fig6_apartment"));
        socket.send(proto.autoTick(true));
        socket.send(proto.listTags());
      }
      redraw();
    },
    onMessage: (msg) => {
      state = applyServer(state, msg);
      if (msg.type === "distance") {
        noteRadarSample(msg.meters ?? null);
      }
      const cue = audioCue(msg as Parameters<typeof audioCue>[0]);
      if (cue !== null) player.apply(cue);
      redraw();
    },
  });
  socket.connect();

  window.setInterval(() => {
    if (state.connection === "open" && state.scenario) {
      socket.send(proto.listTags());
    }
  }, LIST_REFRESH_MS);

  window.setInterval(() => {
    if (state.connection === "open" && radarTarget) {
      socket.send(proto.radar(radarTarget));
    }
  }, RADAR_POLL_MS);

  const keymap: Record<string, [number, number]> = {
    ArrowUp: [0, MOVE_STEP],
    ArrowDown: [0, -MOVE_STEP],
    ArrowLeft: [-MOVE_STEP, 0],
    ArrowRight: [MOVE_STEP, 0],
  };
  document.addEventListener("keydown", (event) => {
    const delta = keymap[event.key];
    if (delta) {
      event.preventDefault();
      socket.send(proto.move(delta[0], delta[1]));
    } else if (event.key === "h") {
      state = toggleHints(state);
      redraw();
    }
  });

  panels.nfcButton.onclick = () => socket.send(proto.nfcRead());
  panel<HTMLButtonElement>("save").onclick = () =>
    socket.send(proto.saveInventory());

  redraw();
}

document.addEventListener("DOMContentLoaded", start);
