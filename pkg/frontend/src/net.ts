/**
 * Socket wrapper: connects to /session, says hello (reusing the stored
 * session token so a page reload or dropout resumes the same world),
 * and reconnects with backoff after disconnects.
 */

import type { ClientMessage, ServerMessage } from "./protocol.js";
import { hello, parseServer } from "./protocol.js";

const TOKEN_KEY = "tagsim-session";

export interface SocketHooks {
  onMessage: (msg: ServerMessage) => void;
  onStatus: (status: "connecting" | "open" | "closed") => void;
}

export class SessionSocket {
  private ws: WebSocket | null = null;
  private retryMs = 500;
  private closedByUser = false;

  constructor(
    private readonly url: string,
    private readonly hooks: SocketHooks,
  ) {}

  connect(): void {
    this.closedByUser = false;
    this.hooks.onStatus("connecting");
    this.ws = new WebSocket(this.url);
    this.ws.onopen = () => {
      this.retryMs = 500;
      this.hooks.onStatus("open");
      this.send(hello(storedToken()));
    };
    this.ws.onmessage = (event) => {
      const msg = parseServer(String(event.data));
      if (msg === null) return;
      if (msg.type === "world_state") storeToken(msg.session_id);
      this.hooks.onMessage(msg);
    };
    this.ws.onclose = () => {
      this.hooks.onStatus("closed");
      this.ws = null;
      if (!this.closedByUser) {
        setTimeout(() => this.connect(), this.retryMs);
        this.retryMs = Math.min(this.retryMs * 2, 10_000);
      }
    };
  }

  send(msg: ClientMessage): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify(msg));
    }
  }

  close(): void {
    this.closedByUser = true;
    this.ws?.close();
  }
}

function storedToken(): string | undefined {
  try {
    return sessionStorage.getItem(TOKEN_KEY) ?? undefined;
  } catch {
    return undefined;
  }
}

function storeToken(token: string): void {
  try {
    sessionStorage.setItem(TOKEN_KEY, token);
  } catch {
    // storage unavailable; reconnects will start fresh sessions
  }
}

export function sessionUrl(loc: { protocol: string; host: string }): string {
  const scheme = loc.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${loc.host}/session`;
}
