/** Client-side state: a mirror of the server session plus UI concerns.
 *
 * The server is authoritative; the only game logic here is legality
 * highlighting (which cards may be selected). Every mutation flows through
 * the store, which re-renders subscribers on change.
 */

import { Advice, ApiError, ApiSession, NewGameOptions, PlayApi, RoundRecord } from "./api.js";

export type Screen = "setup" | "playing" | "finished";

export interface UiState {
  screen: Screen;
  session: ApiSession | null;
  selectedCard: number | null;
  hintVisible: boolean;
  advice: Advice | null;
  adviceRound: number | null;
  /** Last resolved round, shown as the simultaneous-reveal animation. */
  reveal: RoundRecord | null;
  busy: boolean;
  error: string | null;
  /** Session vanished server-side (idle expiry); prompt a new game. */
  expired: boolean;
  explorer: ExplorerState;
}

export interface ExplorerFields {
  v: string;
  y: string;
  p: string;
  upcard: string;
}

export interface ExplorerState extends ExplorerFields {
  result: Advice | null;
  error: string | null;
}

export function initialState(): UiState {
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
export function legalCards(state: UiState): number[] {
  const s = state.session;
  if (!s || s.finished || state.busy) return [];
  return s.your_hand;
}

/** The bid button is enabled only with a legal selection in an active round. */
export function canBid(state: UiState): boolean {
  return state.selectedCard !== null && legalCards(state).includes(state.selectedCard);
}

export function screenOf(session: ApiSession | null): Screen {
  if (!session) return "setup";
  return session.finished ? "finished" : "playing";
}

type Listener = (state: UiState) => void;

export class Store {
  private state: UiState = initialState();
  private listeners = new Set<Listener>();

  constructor(private readonly client: PlayApi) {}

  get current(): UiState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError && err.status === 404 && this.state.session) {
      // idle expiry: the server forgot us; offer a fresh game
      this.set({ expired: true, busy: false, error: "session expired on the server" });
      return;
    }
    const message = err instanceof Error ? err.message : String(err);
    this.set({ error: message, busy: false });
  }

  async newGame(options: NewGameOptions): Promise<void> {
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
    } catch (err) {
      this.fail(err);
    }
  }

  /** Refetch the board (page reload, tab restore). */
  async refresh(sessionId?: string): Promise<void> {
    const id = sessionId ?? this.state.session?.id;
    if (!id) return;
    this.set({ busy: true, error: null });
    try {
      const session = await this.client.getSession(id);
      this.set({ session, screen: screenOf(session), selectedCard: null, busy: false });
    } catch (err) {
      this.fail(err);
    }
  }

  selectCard(card: number): void {
    if (!legalCards(this.state).includes(card)) return;
    this.set({ selectedCard: card === this.state.selectedCard ? null : card, error: null });
  }

  async confirmBid(): Promise<void> {
    if (!canBid(this.state) || !this.state.session) return;
    const card = this.state.selectedCard!;
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
      if (this.state.hintVisible) await this.ensureAdvice();
    } catch (err) {
      this.fail(err);
    }
  }

  /** Called once the reveal animation has played out. */
  clearReveal(): void {
    if (this.state.reveal) this.set({ reveal: null });
  }

  async toggleHint(): Promise<void> {
    const show = !this.state.hintVisible;
    this.set({ hintVisible: show });
    if (show) await this.ensureAdvice();
  }

  async ensureAdvice(): Promise<void> {
    const s = this.state.session;
    if (!s || s.finished || !s.hints) return;
    if (this.state.advice && this.state.adviceRound === s.round) return;
    try {
      const advice = await this.client.advice(s.id);
      this.set({ advice, adviceRound: s.round });
    } catch (err) {
      this.fail(err);
    }
  }

  backToSetup(): void {
    this.set({
      ...initialState(),
      explorer: this.state.explorer,
    });
  }

  async runExplorer(fields: ExplorerFields): Promise<void> {
    const parse = (raw: string) =>
      raw
        .split(",")
        .map((tok) => tok.trim())
        .filter((tok) => tok !== "")
        .map(Number);
    try {
      const result = await this.client.strategy(
        parse(fields.v),
        parse(fields.y),
        parse(fields.p),
        Number(fields.upcard),
      );
      this.set({ explorer: { ...fields, result, error: null } });
    } catch (err) {
      const message = err instanceof Error ? err.message : String(err);
      this.set({ explorer: { ...fields, result: null, error: message } });
    }
  }
}
