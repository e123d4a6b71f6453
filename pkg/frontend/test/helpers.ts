/** Shared test scaffolding: a scripted fake transport and a jsdom page. */

import { JSDOM } from "jsdom";

import {
  Advice,
  ApiError,
  ApiSession,
  NewGameOptions,
  PlayApi,
  RoundRecord,
} from "../src/api.js";

export function makeSession(overrides: Partial<ApiSession> = {}): ApiSession {
  return {
    id: "abc123",
    n: 5,
    round: 1,
    upcard: 3,
    your_hand: [1, 2, 3, 4, 5],
    bot_hand: [1, 2, 3, 4, 5],
    scores: { you: 0, bot: 0 },
    history: [],
    finished: false,
    hints: false,
    result: null,
    ...overrides,
  };
}

/** A transport whose responses are queued by the test. */
export class FakeApi implements PlayApi {
  sessions: ApiSession[] = [];
  bids: { round_record: RoundRecord; session: ApiSession }[] = [];
  adviceQueue: Advice[] = [];
  strategies: Advice[] = [];
  failNext: ApiError | null = null;
  log: string[] = [];

  private take<T>(queue: T[], what: string): Promise<T> {
    if (this.failNext) {
      const err = this.failNext;
      this.failNext = null;
      return Promise.reject(err);
    }
    const item = queue.shift();
    if (item === undefined) throw new Error(`fake transport has no ${what} queued`);
    return Promise.resolve(item);
  }

  createSession(options: NewGameOptions): Promise<ApiSession> {
    this.log.push(`create n=${options.n} hints=${options.hints ?? false}`);
    return this.take(this.sessions, "session");
  }

  getSession(id: string): Promise<ApiSession> {
    this.log.push(`get ${id}`);
    return this.take(this.sessions, "session");
  }

  bid(id: string, card: number): Promise<{ round_record: RoundRecord; session: ApiSession }> {
    this.log.push(`bid ${card}`);
    return this.take(this.bids, "bid result");
  }

  advice(id: string): Promise<Advice> {
    this.log.push(`advice ${id}`);
    return this.take(this.adviceQueue, "advice");
  }

  value(): Promise<number> {
    return Promise.resolve(0);
  }

  strategy(v: number[], y: number[], p: number[], upcard: number): Promise<Advice> {
    this.log.push(`strategy v=${v} y=${y} p=${p} up=${upcard}`);
    return this.take(this.strategies, "strategy");
  }
}

/** Install a fresh jsdom document + the browser globals the app touches. */
export function makePage(): { root: HTMLElement; cleanup: () => void } {
  const dom = new JSDOM(`<!doctype html><html><body><div id="app"></div></body></html>`, {
    url: "http://localhost/",
  });
  const g = globalThis as Record<string, unknown>;
  const saved: Record<string, unknown> = {};
  for (const key of ["document", "localStorage", "FormData", "HTMLElement", "Node"]) {
    saved[key] = g[key];
    g[key] = (dom.window as unknown as Record<string, unknown>)[key];
  }
  const root = dom.window.document.getElementById("app") as unknown as HTMLElement;
  return {
    root,
    cleanup: () => {
      for (const [key, value] of Object.entries(saved)) {
        if (value === undefined) delete g[key];
        else g[key] = value;
      }
      dom.window.close();
    },
  };
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}

/** Poll until the condition holds (async UI settling). */
export async function until(cond: () => boolean, what = "condition", ms = 10_000): Promise<void> {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > ms) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}
