/** Shared test scaffolding: a scripted fake transport and a jsdom page. */
import { JSDOM } from "jsdom";
export function makeSession(overrides = {}) {
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
export class FakeApi {
    sessions = [];
    bids = [];
    adviceQueue = [];
    strategies = [];
    failNext = null;
    log = [];
    take(queue, what) {
        if (this.failNext) {
            const err = this.failNext;
            this.failNext = null;
            return Promise.reject(err);
        }
        const item = queue.shift();
        if (item === undefined)
            throw new Error(`fake transport has no ${what} queued`);
        return Promise.resolve(item);
    }
    createSession(options) {
        this.log.push(`create n=${options.n} hints=${options.hints ?? false}`);
        return this.take(this.sessions, "session");
    }
    getSession(id) {
        this.log.push(`get ${id}`);
        return this.take(this.sessions, "session");
    }
    bid(id, card) {
        this.log.push(`bid ${card}`);
        return this.take(this.bids, "bid result");
    }
    advice(id) {
        this.log.push(`advice ${id}`);
        return this.take(this.adviceQueue, "advice");
    }
    value() {
        return Promise.resolve(0);
    }
    strategy(v, y, p, upcard) {
        this.log.push(`strategy v=${v} y=${y} p=${p} up=${upcard}`);
        return this.take(this.strategies, "strategy");
    }
}
/** Install a fresh jsdom document + the browser globals the app touches. */
export function makePage() {
    const dom = new JSDOM(`<!doctype html><html><body><div id="app"></div></body></html>`, {
        url: "http://localhost/",
    });
    const g = globalThis;
    const saved = {};
    for (const key of ["document", "localStorage", "FormData", "HTMLElement", "Node"]) {
        saved[key] = g[key];
        g[key] = dom.window[key];
    }
    const root = dom.window.document.getElementById("app");
    return {
        root,
        cleanup: () => {
            for (const [key, value] of Object.entries(saved)) {
                if (value === undefined)
                    delete g[key];
                else
                    g[key] = value;
            }
            dom.window.close();
        },
    };
}
export async function flush() {
    await new Promise((resolve) => setTimeout(resolve, 0));
}
/** Poll until the condition holds (async UI settling). */
export async function until(cond, what = "condition", ms = 10_000) {
    const start = Date.now();
    while (!cond()) {
        if (Date.now() - start > ms)
            throw new Error(`timed out waiting for ${what}`);
        await new Promise((resolve) => setTimeout(resolve, 5));
    }
}
