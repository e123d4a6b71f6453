/** Client-side state: a mirror of the server session plus UI concerns.
 *
 * The server is authoritative; the only game logic here is legality
 * highlighting (which cards may be selected). Every mutation flows through
 * the store, which re-renders subscribers on change.
 */
import { ApiError } from "./api.js";
export function initialState() {
    return {
        screen: "setup",
        session: null,
        selectedCard: null,
        hintVisible: false,
        advice: null,
        adviceRound: null,
        reveal: null,
        busy: false,
        error: null,
        expired: false,
        explorer: { v: "2,4", y: "1,3", p: "12,13", upcard: "13", result: null, error: null },
    };
}
/** Cards the human may legally select right now. */
export function legalCards(state) {
    const s = state.session;
    if (!s || s.finished || state.busy)
        return [];
    return s.your_hand;
}
/** The bid button is enabled only with a legal selection in an active round. */
export function canBid(state) {
    return state.selectedCard !== null && legalCards(state).includes(state.selectedCard);
}
export function screenOf(session) {
    if (!session)
        return "setup";
    return session.finished ? "finished" : "playing";
}
export class Store {
    client;
    state = initialState();
    listeners = new Set();
    constructor(client) {
        this.client = client;
    }
    get current() {
        return this.state;
    }
    subscribe(listener) {
        this.listeners.add(listener);
        return () => this.listeners.delete(listener);
    }
    set(patch) {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners)
            listener(this.state);
    }
    fail(err) {
        if (err instanceof ApiError && err.status === 404 && this.state.session) {
            // idle expiry: the server forgot us; offer a fresh game
            this.set({ expired: true, busy: false, error: "session expired on the server" });
            return;
        }
        const message = err instanceof Error ? err.message : String(err);
        this.set({ error: message, busy: false });
    }
    async newGame(options) {
        this.set({ busy: true, error: null, expired: false });
        try {
            const session = await this.client.createSession(options);
            this.set({
                session,
                screen: screenOf(session),
                selectedCard: null,
                advice: null,
                adviceRound: null,
                reveal: null,
                hintVisible: false,
                busy: false,
            });
        }
        catch (err) {
            this.fail(err);
        }
    }
    /** Refetch the board (page reload, tab restore). */
    async refresh(sessionId) {
        const id = sessionId ?? this.state.session?.id;
        if (!id)
            return;
        this.set({ busy: true, error: null });
        try {
            const session = await this.client.getSession(id);
            this.set({ session, screen: screenOf(session), selectedCard: null, busy: false });
        }
        catch (err) {
            this.fail(err);
        }
    }
    selectCard(card) {
        if (!legalCards(this.state).includes(card))
            return;
        this.set({ selectedCard: card === this.state.selectedCard ? null : card, error: null });
    }
    async confirmBid() {
        if (!canBid(this.state) || !this.state.session)
            return;
        const card = this.state.selectedCard;
        this.set({ busy: true, error: null });
        try {
            const { round_record, session } = await this.client.bid(this.state.session.id, card);
            this.set({
                session,
                screen: screenOf(session),
                selectedCard: null,
                advice: null,
                adviceRound: null,
                reveal: round_record,
                busy: false,
            });
            if (this.state.hintVisible)
                await this.ensureAdvice();
        }
        catch (err) {
            this.fail(err);
        }
    }
    /** Called once the reveal animation has played out. */
    clearReveal() {
        if (this.state.reveal)
            this.set({ reveal: null });
    }
    async toggleHint() {
        const show = !this.state.hintVisible;
        this.set({ hintVisible: show });
        if (show)
            await this.ensureAdvice();
    }
    async ensureAdvice() {
        const s = this.state.session;
        if (!s || s.finished || !s.hints)
            return;
        if (this.state.advice && this.state.adviceRound === s.round)
            return;
        try {
            const advice = await this.client.advice(s.id);
            this.set({ advice, adviceRound: s.round });
        }
        catch (err) {
            this.fail(err);
        }
    }
    backToSetup() {
        this.set({
            ...initialState(),
            explorer: this.state.explorer,
        });
    }
    async runExplorer(fields) {
        const parse = (raw) => raw
            .split(",")
            .map((tok) => tok.trim())
            .filter((tok) => tok !== "")
            .map(Number);
        try {
            const result = await this.client.strategy(parse(fields.v), parse(fields.y), parse(fields.p), Number(fields.upcard));
            this.set({ explorer: { ...fields, result, error: null } });
        }
        catch (err) {
            const message = err instanceof Error ? err.message : String(err);
            this.set({ explorer: { ...fields, result: null, error: message } });
        }
    }
}
