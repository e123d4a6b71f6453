import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiError } from "../src/api.js";
import { Store, canBid, initialState, legalCards, screenOf } from "../src/state.js";
import { FakeApi, flush, makeSession } from "./helpers.js";

test("legality: only hand cards in an active round are selectable", () => {
  const state = { ...initialState(), session: makeSession(), screen: "playing" as const };
  assert.deepEqual(legalCards(state), [1, 2, 3, 4, 5]);
  assert.equal(canBid(state), false);
  assert.equal(canBid({ ...state, selectedCard: 3 }), true);
  assert.equal(canBid({ ...state, selectedCard: 9 }), false);
  const done = { ...state, session: makeSession({ finished: true }) };
  assert.deepEqual(legalCards(done), []);
  const busy = { ...state, busy: true };
  assert.equal(canBid({ ...busy, selectedCard: 3 }), false);
});

test("screen follows the session", () => {
  assert.equal(screenOf(null), "setup");
  assert.equal(screenOf(makeSession()), "playing");
  assert.equal(screenOf(makeSession({ finished: true })), "finished");
});

test("newGame resets selection, hints and reveal", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5, seed: 1, hints: true });
  assert.equal(store.current.screen, "playing");
  assert.equal(store.current.selectedCard, null);
  assert.equal(store.current.hintVisible, false);
  assert.equal(store.current.reveal, null);
  assert.equal(api.log[0], "create n=5 hints=true");
});

test("selectCard toggles and rejects illegal cards", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5 });
  store.selectCard(3);
  assert.equal(store.current.selectedCard, 3);
  store.selectCard(3);
  assert.equal(store.current.selectedCard, null);
  store.selectCard(7);
  assert.equal(store.current.selectedCard, null);
});

test("confirmBid stores the reveal and advances the board", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const after = makeSession({
    round: 2,
    upcard: 5,
    your_hand: [1, 2, 4, 5],
    bot_hand: [1, 2, 3, 5],
    scores: { you: 3, bot: 0 },
    history: [{ upcard: 3, human_bid: 3, bot_bid: 4, points_to: "bot" }],
  });
  api.bids.push({
    round_record: { upcard: 3, human_bid: 3, bot_bid: 4, points_to: "bot" },
    session: after,
  });
  const store = new Store(api);
  await store.newGame({ n: 5 });
  store.selectCard(3);
  await store.confirmBid();
  assert.equal(store.current.session?.round, 2);
  assert.deepEqual(store.current.reveal, { upcard: 3, human_bid: 3, bot_bid: 4, points_to: "bot" });
  store.clearReveal();
  assert.equal(store.current.reveal, null);
});

test("bid without a legal selection is a no-op", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5 });
  await store.confirmBid();
  assert.equal(api.log.filter((l) => l.startsWith("bid")).length, 0);
});

test("advice is fetched once per round and refetched after a bid", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession({ hints: true }));
  api.adviceQueue.push({ probs: [{ card: 1, p: 1 }], value: 0.5 });
  const store = new Store(api);
  await store.newGame({ n: 5, hints: true });
  await store.toggleHint();
  await store.ensureAdvice(); // same round: no second call
  assert.equal(api.log.filter((l) => l.startsWith("advice")).length, 1);
  assert.equal(store.current.advice?.value, 0.5);

  api.bids.push({
    round_record: { upcard: 3, human_bid: 1, bot_bid: 1, points_to: "split" },
    session: makeSession({ hints: true, round: 2, your_hand: [2, 3, 4, 5] }),
  });
  api.adviceQueue.push({ probs: [{ card: 2, p: 1 }], value: -0.25 });
  store.selectCard(1);
  await store.confirmBid();
  await flush();
  assert.equal(api.log.filter((l) => l.startsWith("advice")).length, 2);
  assert.equal(store.current.advice?.value, -0.25);
});

test("a 404 mid-game flags expiry instead of a bare error", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5 });
  api.failNext = new ApiError(404, "unknown session");
  await store.refresh();
  assert.equal(store.current.expired, true);
});

test("other API errors surface inline and clear busy", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5 });
  api.failNext = new ApiError(409, "card 9 is not in your hand");
  store.selectCard(2);
  await store.confirmBid();
  assert.match(store.current.error ?? "", /not in your hand/);
  assert.equal(store.current.busy, false);
});

test("explorer parses card lists and records results", async () => {
  const api = new FakeApi();
  api.strategies.push({
    probs: [
      { card: 2, p: 0.48 },
      { card: 4, p: 0.52 },
    ],
    value: 12.52,
  });
  const store = new Store(api);
  await store.runExplorer({ v: "2, 4", y: "1,3", p: "12,13", upcard: "13" });
  assert.equal(api.log.at(-1), "strategy v=2,4 y=1,3 p=12,13 up=13");
  assert.equal(store.current.explorer.result?.value, 12.52);

  api.failNext = new ApiError(400, "upcard 5 not in deck");
  await store.runExplorer({ v: "2,4", y: "1,3", p: "12,13", upcard: "5" });
  assert.match(store.current.explorer.error ?? "", /upcard 5/);
  assert.equal(store.current.explorer.result, null);
});

test("backToSetup keeps explorer contents", async () => {
  const api = new FakeApi();
  api.sessions.push(makeSession());
  const store = new Store(api);
  await store.newGame({ n: 5 });
  store.backToSetup();
  assert.equal(store.current.screen, "setup");
  assert.equal(store.current.session, null);
  assert.equal(store.current.explorer.v, "2,4");
});
