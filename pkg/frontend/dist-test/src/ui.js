/** DOM rendering and event wiring. The whole app re-renders from state on
 * every store change; at this scale that is simpler than targeted updates.
 * Interactive inputs are uncontrolled so re-renders never clobber typing
 * (renders only happen after store actions, not on keystrokes).
 */
import { fmtMargin, fmtProb, fmtScore, fmtValue, transcriptJson } from "./format.js";
import { canBid, legalCards } from "./state.js";
const REVEAL_MS = 900;
const SESSION_KEY = "gops.session";
const FACES = { 1: "A", 11: "J", 12: "Q", 13: "K" };
export function cardLabel(card) {
    return FACES[card] ?? String(card);
}
function esc(text) {
    return text.replace(/[&<>"']/g, (ch) => `&#${ch.charCodeAt(0)};`);
}
// --------------------------------------------------------------------------
// fragments
function errorBanner(state) {
    if (!state.error)
        return "";
    return `<div class="banner error" data-testid="error">${esc(state.error)}</div>`;
}
function expiredBanner(state) {
    if (!state.expired)
        return "";
    return `
    <div class="banner warn" data-testid="expired">
      This session is gone (idle sessions expire on the server).
      <button data-action="back-to-setup">Start a new game</button>
    </div>`;
}
export function hintBars(advice) {
    const rows = advice.probs
        .map((entry) => `
      <div class="hint-row">
        <span class="hint-card">${cardLabel(entry.card)}</span>
        <span class="bar-box"><span class="bar" style="width:${(entry.p * 100).toFixed(2)}%"></span></span>
        <span class="hint-label" data-testid="hint-p-${entry.card}">${fmtProb(entry.p)}</span>
      </div>`)
        .join("");
    return `
    <div class="hint-bars">
      ${rows}
      <div class="hint-value">stage value <strong data-testid="hint-value">${fmtValue(advice.value)}</strong></div>
    </div>`;
}
function setupScreen(state) {
    const ex = state.explorer;
    return `
    <section class="setup">
      <h1>Game of Pure Strategy</h1>
      <p>Bid sealed cards for each upcard; the higher bid takes its value, ties split it.
         The bot plays the exact equilibrium mixture for the served deck.</p>
      ${errorBanner(state)}
      <form data-action="new-game" data-testid="new-game-form">
        <label>cards <input name="n" type="number" min="1" max="13" value="5" data-testid="n"></label>
        <label>seed <input name="seed" type="number" placeholder="random" data-testid="seed"></label>
        <label class="hints-toggle"><input name="hints" type="checkbox" data-testid="hints"> enable hints</label>
        <button type="submit" ${state.busy ? "disabled" : ""} data-testid="deal">Deal</button>
      </form>
      <details class="explorer" open>
        <summary>Endgame explorer</summary>
        <p>Equilibrium mixture for any small position (your cards vs theirs vs deck).</p>
        <form data-action="explore" data-testid="explorer-form">
          <label>you <input name="v" value="${esc(ex.v)}"></label>
          <label>them <input name="y" value="${esc(ex.y)}"></label>
          <label>deck <input name="p" value="${esc(ex.p)}"></label>
          <label>upcard <input name="upcard" value="${esc(ex.upcard)}" size="3"></label>
          <button type="submit" data-testid="explore">Analyse</button>
        </form>
        ${ex.error ? `<div class="banner error" data-testid="explorer-error">${esc(ex.error)}</div>` : ""}
        ${ex.result ? `<div data-testid="explorer-result">${hintBars(ex.result)}</div>` : ""}
      </details>
    </section>`;
}
function scoreTrack(session) {
    const total = (session.n * (session.n + 1)) / 2;
    const you = session.scores.you;
    const bot = session.scores.bot;
    return `
    <div class="scores" data-testid="scores">
      <div>you <strong data-testid="score-you">${fmtScore(you)}</strong></div>
      <div class="score-bar">
        <span class="you" style="width:${(you / total) * 100}%"></span>
        <span class="bot" style="width:${(bot / total) * 100}%"></span>
      </div>
      <div>bot <strong data-testid="score-bot">${fmtScore(bot)}</strong></div>
    </div>`;
}
function historyTable(history) {
    if (!history.length)
        return "";
    const rows = history
        .map((r, i) => `
      <tr data-testid="history-row">
        <td>${i + 1}</td><td>${cardLabel(r.upcard)}</td>
        <td>${cardLabel(r.human_bid)}</td><td>${cardLabel(r.bot_bid)}</td>
        <td class="${r.points_to}">${r.points_to === "split" ? "split" : r.points_to === "human" ? "you" : "bot"}</td>
      </tr>`)
        .join("");
    return `
    <table class="history">
      <thead><tr><th>#</th><th>upcard</th><th>you</th><th>bot</th><th>points</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>`;
}
function revealOverlay(state) {
    const r = state.reveal;
    if (!r)
        return "";
    const outcome = r.points_to === "split" ? "split" : r.points_to === "human" ? "you take it" : "bot takes it";
    return `
    <div class="reveal" data-testid="reveal">
      <div class="reveal-cards">
        <span class="card flip you">${cardLabel(r.human_bid)}</span>
        <span class="card upcard-small">${cardLabel(r.upcard)}</span>
        <span class="card flip bot">${cardLabel(r.bot_bid)}</span>
      </div>
      <div class="reveal-outcome">${outcome} (+${r.upcard})</div>
    </div>`;
}
function playingScreen(state) {
    const s = state.session;
    const legal = legalCards(state);
    const yourCards = s.your_hand
        .map((card) => {
        const classes = ["card", "clickable"];
        if (card === state.selectedCard)
            classes.push("selected");
        if (!legal.includes(card))
            classes.push("disabled");
        return `<button class="${classes.join(" ")}" data-action="select-card" data-card="${card}"
              data-testid="your-card-${card}" ${legal.includes(card) ? "" : "disabled"}>${cardLabel(card)}</button>`;
    })
        .join("");
    const botCards = s.bot_hand
        .map((card) => `<span class="card flat" data-testid="bot-card-${card}">${cardLabel(card)}</span>`)
        .join("");
    const hintPanel = !s.hints
        ? ""
        : `
    <section class="hints" data-testid="hint-panel">
      <button data-action="toggle-hint" data-testid="hint-toggle">${state.hintVisible ? "hide" : "show"} hint</button>
      ${state.hintVisible && state.advice ? hintBars(state.advice) : ""}
    </section>`;
    return `
    <section class="board">
      <header>
        <span data-testid="round">round ${s.round} / ${s.n}</span>
        <button data-action="back-to-setup">abandon</button>
      </header>
      ${errorBanner(state)}
      ${expiredBanner(state)}
      ${scoreTrack(s)}
      <div class="table-row">
        <div class="bot-hand"><h3>bot holds</h3>${botCards}</div>
        <div class="upcard-box">
          <h3>upcard</h3>
          <span class="card upcard" data-testid="upcard">${s.upcard === null ? "-" : cardLabel(s.upcard)}</span>
        </div>
      </div>
      ${revealOverlay(state)}
      <div class="your-hand">
        <h3>your hand</h3>
        ${yourCards}
        <button class="bid" data-action="confirm-bid" data-testid="bid"
                ${canBid(state) ? "" : "disabled"}>bid</button>
      </div>
      ${hintPanel}
      ${historyTable(s.history)}
    </section>`;
}
function finishedScreen(state) {
    const s = state.session;
    const result = s.result;
    const banner = result.winner === "human" ? "You win!" : result.winner === "bot" ? "The bot wins." : "A draw.";
    const href = `data:application/json;charset=utf-8,${encodeURIComponent(transcriptJson(s))}`;
    return `
    <section class="end">
      <h1 data-testid="winner">${banner}</h1>
      <p data-testid="final-scores">
        final score: you ${fmtScore(result.scores.you)} - bot ${fmtScore(result.scores.bot)}
        (zero-sum margin <span data-testid="margin">${fmtMargin(result.zero_sum_margin)}</span>)
      </p>
      ${errorBanner(state)}
      <a class="download" download="gops-transcript.json" href="${href}" data-testid="download">
        download transcript</a>
      <button data-action="back-to-setup" data-testid="again">play again</button>
      ${historyTable(s.history)}
    </section>`;
}
export function render(root, state) {
    if (state.screen === "setup")
        root.innerHTML = setupScreen(state);
    else if (state.screen === "playing")
        root.innerHTML = playingScreen(state);
    else
        root.innerHTML = finishedScreen(state);
}
// --------------------------------------------------------------------------
// wiring
function formValues(form) {
    const out = {};
    new FormData(form).forEach((value, key) => {
        out[key] = String(value);
    });
    return out;
}
export function mountUi(store, root) {
    let revealTimer = null;
    const unsubscribe = store.subscribe((state) => {
        render(root, state);
        if (state.session)
            localStorage.setItem(SESSION_KEY, state.session.id);
        if (state.screen === "setup")
            localStorage.removeItem(SESSION_KEY);
        if (state.reveal && revealTimer === null) {
            revealTimer = setTimeout(() => {
                revealTimer = null;
                store.clearReveal();
            }, REVEAL_MS);
        }
    });
    root.addEventListener("click", (event) => {
        const target = event.target.closest("[data-action]");
        if (!target || target.tagName === "FORM")
            return;
        const action = target.dataset.action;
        if (action === "select-card")
            store.selectCard(Number(target.dataset.card));
        else if (action === "confirm-bid")
            void store.confirmBid();
        else if (action === "toggle-hint")
            void store.toggleHint();
        else if (action === "back-to-setup")
            store.backToSetup();
    });
    root.addEventListener("submit", (event) => {
        const form = event.target;
        if (!form.dataset.action)
            return;
        event.preventDefault();
        const fields = formValues(form);
        if (form.dataset.action === "new-game") {
            void store.newGame({
                n: Number(fields.n || "5"),
                seed: fields.seed ? Number(fields.seed) : undefined,
                hints: "hints" in fields,
            });
        }
        else if (form.dataset.action === "explore") {
            void store.runExplorer({
                v: fields.v ?? "",
                y: fields.y ?? "",
                p: fields.p ?? "",
                upcard: fields.upcard ?? "",
            });
        }
    });
    render(root, store.current);
    return () => {
        unsubscribe();
        if (revealTimer !== null)
            clearTimeout(revealTimer);
    };
}
/** Session id saved by the last render, if any (reload restoration). */
export function savedSessionId() {
    return localStorage.getItem(SESSION_KEY);
}
