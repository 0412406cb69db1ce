// Log-scale tau slider mapping. The interesting tolerance range spans two
// orders of magnitude (50 to 5000 ms) and the latency penalty is
// exponential, so linear slider travel should mean multiplicative tau
// steps. Detents snap to the three canonical tolerances so the headline
// columns are reachable exactly, not as 499.999.

export const TAU_MIN_MS = 50;
export const TAU_MAX_MS = 5000;
export const TAU_DETENTS_MS: readonly number[] = [250, 500, 1000];

/** Integer slider positions 0..SLIDER_STEPS map onto [TAU_MIN, TAU_MAX]. */
export const SLIDER_STEPS = 1000;

const LOG_MIN = Math.log(TAU_MIN_MS);
const LOG_MAX = Math.log(TAU_MAX_MS);

// snap window, in slider positions; ~1.8% of travel per side
const DETENT_RADIUS = 18;

export function positionToTau(position: number): number {
  const clamped = Math.min(Math.max(position, 0), SLIDER_STEPS);
  return Math.exp(LOG_MIN + (clamped / SLIDER_STEPS) * (LOG_MAX - LOG_MIN));
}

export function tauToPosition(tauMs: number): number {
  const clamped = Math.min(Math.max(tauMs, TAU_MIN_MS), TAU_MAX_MS);
  return Math.round(
    (SLIDER_STEPS * (Math.log(clamped) - LOG_MIN)) / (LOG_MAX - LOG_MIN)
  );
}

/**
 * Tau for a slider position, snapped to the nearest detent when the position
 * falls inside its window. Snapped values are exact: a release near the 500
 * detent requests tau_ms of exactly 500.
 */
export function tauAtPosition(position: number): number {
  for (const detent of TAU_DETENTS_MS) {
    if (Math.abs(position - tauToPosition(detent)) <= DETENT_RADIUS) {
      return detent;
    }
  }
  // keep free positions stable across round trips
  return Math.round(positionToTau(position) * 10) / 10;
}
