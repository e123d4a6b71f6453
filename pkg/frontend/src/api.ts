/** Typed client for the play service's JSON endpoints. */

export type PointsTo = "human" | "bot" | "split";

export interface RoundRecord {
  upcard: number;
  human_bid: number;
  bot_bid: number;
  points_to: PointsTo;
}

export interface SessionResult {
  winner: "human" | "bot" | "draw";
  scores: { you: number; bot: number };
  zero_sum_margin: number;
}

export interface ApiSession {
  id: string;
  n: number;
  round: number;
  upcard: number | null;
  your_hand: number[];
  bot_hand: number[];
  scores: { you: number; bot: number };
  history: RoundRecord[];
  finished: boolean;
  hints: boolean;
  result: SessionResult | null;
}

export interface AdviceEntry {
  card: number;
  p: number;
}

export interface Advice {
  probs: AdviceEntry[];
  value: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  let payload: unknown = null;
  try {
    payload = await response.json();
  } catch {
    // non-JSON body; fall through to the status check
  }
  if (!response.ok) {
    const detail =
      payload && typeof payload === "object" && "error" in payload
        ? String((payload as { error: unknown }).error)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return payload as T;
}

export interface NewGameOptions {
  n: number;
  seed?: number;
  hints?: boolean;
}

/** What the store needs from the transport; GopsClient is the real one. */
export interface PlayApi {
  createSession(options: NewGameOptions): Promise<ApiSession>;
  getSession(id: string): Promise<ApiSession>;
  bid(id: string, card: number): Promise<{ round_record: RoundRecord; session: ApiSession }>;
  advice(id: string): Promise<Advice>;
  value(v: number[], y: number[], p: number[]): Promise<number>;
  strategy(v: number[], y: number[], p: number[], upcard: number): Promise<Advice>;
}

export class GopsClient implements PlayApi {
  constructor(private readonly base: string = "") {}

  async createSession(options: NewGameOptions): Promise<ApiSession> {
    const body: Record<string, unknown> = { n: options.n };
    if (options.seed !== undefined) body.seed = options.seed;
    if (options.hints !== undefined) body.hints = options.hints;
    const data = await request<{ session: ApiSession }>(`${this.base}/api/v1/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return data.session;
  }

  async getSession(id: string): Promise<ApiSession> {
    const data = await request<{ session: ApiSession }>(`${this.base}/api/v1/sessions/${id}`);
    return data.session;
  }

  async bid(id: string, card: number): Promise<{ round_record: RoundRecord; session: ApiSession }> {
    return request(`${this.base}/api/v1/sessions/${id}/bid`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ card }),
    });
  }

  async advice(id: string): Promise<Advice> {
    return request(`${this.base}/api/v1/sessions/${id}/advice`);
  }

  async value(v: number[], y: number[], p: number[]): Promise<number> {
    const params = new URLSearchParams({ v: v.join(","), y: y.join(","), p: p.join(",") });
    const data = await request<{ value: number }>(`${this.base}/api/v1/value?${params}`);
    return data.value;
  }

  async strategy(v: number[], y: number[], p: number[], upcard: number): Promise<Advice> {
    const params = new URLSearchParams({
      v: v.join(","),
      y: y.join(","),
      p: p.join(","),
      upcard: String(upcard),
    });
    return request(`${this.base}/api/v1/strategy?${params}`);
  }
}
