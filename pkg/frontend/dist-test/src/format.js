/** Tiny display helpers shared by the board and the hint panel. */
/** Four-decimal probability label, zeros as a bare 0 (table style). */
export function fmtProb(p) {
    return p === 0 ? "0" : p.toFixed(4);
}
/** Game/stage value trimmed to at most four decimals ("12.52", "0", "-1.5"). */
export function fmtValue(v) {
    const rounded = Math.round(v * 10000) / 10000;
    return Object.is(rounded, -0) ? "0" : String(rounded);
}
/** Split scores are half-point exact; show them plainly ("3", "2.5"). */
export function fmtScore(s) {
    return String(s);
}
export function fmtMargin(margin) {
    return margin > 0 ? `+${margin}` : String(margin);
}
/** Pretty-printed transcript for the end-screen download. */
export function transcriptJson(session) {
    return JSON.stringify({
        n: session.n,
        rounds: session.history,
        scores: session.scores,
        result: session.result,
    }, null, 2);
}
