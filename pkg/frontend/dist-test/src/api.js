/** Typed client for the play service's JSON endpoints. */
export class ApiError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
async function request(url, init) {
    const response = await fetch(url, init);
    let payload = null;
    try {
        payload = await response.json();
    }
    catch {
        // non-JSON body; fall through to the status check
    }
    if (!response.ok) {
        const detail = payload && typeof payload === "object" && "error" in payload
            ? String(payload.error)
            : response.statusText;
        throw new ApiError(response.status, detail);
    }
    return payload;
}
export class GopsClient {
    base;
    constructor(base = "") {
        this.base = base;
    }
    async createSession(options) {
        const body = { n: options.n };
        if (options.seed !== undefined)
            body.seed = options.seed;
        if (options.hints !== undefined)
            body.hints = options.hints;
        const data = await request(`${this.base}/api/v1/sessions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
        return data.session;
    }
    async getSession(id) {
        const data = await request(`${this.base}/api/v1/sessions/${id}`);
        return data.session;
    }
    async bid(id, card) {
        return request(`${this.base}/api/v1/sessions/${id}/bid`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ card }),
        });
    }
    async advice(id) {
        return request(`${this.base}/api/v1/sessions/${id}/advice`);
    }
    async value(v, y, p) {
        const params = new URLSearchParams({ v: v.join(","), y: y.join(","), p: p.join(",") });
        const data = await request(`${this.base}/api/v1/value?${params}`);
        return data.value;
    }
    async strategy(v, y, p, upcard) {
        const params = new URLSearchParams({
            v: v.join(","),
            y: y.join(","),
            p: p.join(","),
            upcard: String(upcard),
        });
        return request(`${this.base}/api/v1/strategy?${params}`);
    }
}
