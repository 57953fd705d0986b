// WebSocket connection with auto-reconnect. The server speaks one JSON
// message per frame; parse failures are dropped (the server never sends
// anything else on this socket).

import { ClientMessage, encodeClientMessage, parseServerMessage, ServerMessage } from "./protocol.js";

export interface Connection {
  send(msg: ClientMessage): boolean;
  close(): void;
}

export function connect(
  url: string,
  onMessage: (msg: ServerMessage) => void,
  onStatus: (connected: boolean) => void,
): Connection {
  let socket: WebSocket | null = null;
  let closed = false;
  let retryMs = 500;

  const open = () => {
    if (closed) return;
    socket = new WebSocket(url);
    socket.onopen = () => {
      retryMs = 500;
      onStatus(true);
    };
    socket.onmessage = (event) => {
      const msg = parseServerMessage(String(event.data));
      if (msg) onMessage(msg);
    };
    socket.onclose = () => {
      onStatus(false);
      socket = null;
      if (!closed) {
        window.setTimeout(open, retryMs);
        retryMs = Math.min(retryMs * 2, 8000);
      }
    };
    socket.onerror = () => socket?.close();
  };
  open();

  return {
    send(msg: ClientMessage): boolean {
      if (socket && socket.readyState === WebSocket.OPEN) {
        socket.send(encodeClientMessage(msg));
        return true;
      }
      return false;
    },
    close() {
      closed = true;
      socket?.close();
    },
  };
}
