import { describe, expect, test } from "vitest";
import { trialPayloadSchema } from "../src/schema.js";
import { LiveSession, SessionPlan, TickEvent } from "../src/session.js";

const FRAME_MS = 1000 / 60;

function makePlan(overrides: Partial<SessionPlan> = {}): SessionPlan {
  return {
    sessionId: "live-test-p00",
    group: "iteration2",
    participantId: 0,
    radiusPx: 24,
    dwellMs: 500,
    timeoutMs: 60_000,
    screenPx: { width: 1920, height: 1080 },
    trials: [
      {
        trialIndex: 1,
        targets: [
          { xPx: 300, yPx: 400 },
          { xPx: 900, yPx: 200 },
        ],
      },
      {
        trialIndex: 2,
        targets: [
          { xPx: 500, yPx: 700 },
          { xPx: 1500, yPx: 300 },
        ],
      },
    ],
    config: { trials_per_participant: 2 },
    ...overrides,
  };
}

/** Run frames at 60 fps until the predicate fires or maxMs elapse. */
function runFrames(
  session: LiveSession,
  pointerAt: (tMs: number) => { x: number; y: number } | null,
  until: (ev: TickEvent) => boolean,
  startMs = 0,
  maxMs = 120_000
): { event: TickEvent; tMs: number } {
  for (let t = startMs; t <= startMs + maxMs; t += FRAME_MS) {
    const p = pointerAt(t - startMs);
    const ev = session.tick(t, p ? p.x : null, p ? p.y : null);
    if (until(ev)) return { event: ev, tMs: t };
  }
  throw new Error("predicate never fired");
}

describe("dwell selection", () => {
  test("pointer parked inside from highlight onward completes in dwell plus at most one frame", () => {
    const session = new LiveSession(makePlan());
    const { event } = runFrames(
      session,
      () => ({ x: 300, y: 400 }),
      (ev) => ev.kind === "target-complete"
    );
    if (event.kind !== "target-complete") throw new Error("unreachable");
    expect(event.movementTimeMs).toBeGreaterThanOrEqual(500);
    expect(event.movementTimeMs).toBeLessThanOrEqual(500 + FRAME_MS + 1e-9);
  });

  test("crossing the target for less than the dwell never completes it", () => {
    const session = new LiveSession(makePlan());
    // inside for 300 ms, out for 100 ms, repeatedly: accumulator resets
    // each exit, so 10 s of this completes nothing
    const pointer = (t: number) =>
      t % 400 < 300 ? { x: 300, y: 400 } : { x: 0, y: 0 };
    for (let t = 0; t <= 10_000; t += FRAME_MS) {
      const p = pointer(t);
      const ev = session.tick(t, p.x, p.y);
      expect(ev.kind).toBe("none");
    }
    expect(session.current()?.targetOrdinal).toBe(1);
  });

  test("leaving the target zeroes the dwell fraction immediately", () => {
    const session = new LiveSession(makePlan());
    session.tick(0, 300, 400);
    session.tick(FRAME_MS, 300, 400);
    session.tick(2 * FRAME_MS, 300, 400);
    expect(session.current()!.dwellFraction).toBeGreaterThan(0);
    session.tick(3 * FRAME_MS, 0, 0);
    expect(session.current()!.dwellFraction).toBe(0);
  });

  test("pointer off the page counts as outside", () => {
    const session = new LiveSession(makePlan());
    session.tick(0, 300, 400);
    session.tick(FRAME_MS, 300, 400);
    session.tick(2 * FRAME_MS, null, null);
    expect(session.current()!.dwellFraction).toBe(0);
  });

  test("a point exactly on the rim counts as inside", () => {
    const session = new LiveSession(makePlan());
    let ev: TickEvent = { kind: "none" };
    for (let t = 0; t <= 600; t += FRAME_MS) {
      ev = session.tick(t, 300 + 24, 400);
      if (ev.kind !== "none") break;
    }
    expect(ev.kind).toBe("target-complete");
  });
});

describe("clock discipline", () => {
  test("time running backwards throws instead of producing a negative timing", () => {
    const session = new LiveSession(makePlan());
    session.tick(100, 300, 400);
    expect(() => session.tick(99, 300, 400)).toThrow(/clock went backwards/);
  });

  test("a timed-out target is charged exactly the timeout budget", () => {
    const session = new LiveSession(makePlan({ timeoutMs: 2_000 }));
    const { event } = runFrames(
      session,
      () => ({ x: 0, y: 0 }), // never near the target
      (ev) => ev.kind !== "none"
    );
    expect(event.kind).toBe("target-timeout");
    // session continues on the next target rather than wedging
    expect(session.current()!.targetOrdinal).toBe(2);
  });
});

describe("session lifecycle and payload", () => {
  function completeSession(plan: SessionPlan): LiveSession {
    const session = new LiveSession(plan);
    let t = 0;
    while (!session.done) {
      const target = session.current()!.target;
      ({ tMs: t } = runFrames(
        session,
        () => ({ x: target.xPx, y: target.yPx }),
        (ev) => ev.kind !== "none",
        t
      ));
      t += FRAME_MS;
    }
    return session;
  }

  test("completed session yields exactly trials x targets timing entries, all schema-valid", () => {
    const session = completeSession(makePlan());
    const payload = session.payload();
    expect(payload).toHaveLength(2);
    for (const trial of payload) {
      expect(trial.targets).toHaveLength(2);
      expect(() => trialPayloadSchema.parse(trial)).not.toThrow();
      for (const entry of trial.targets) {
        expect(entry.movement_time_s).toBeGreaterThanOrEqual(0);
        expect(entry.timeout).toBe(false);
      }
    }
    expect(payload.map((p) => p.trial_index)).toEqual([1, 2]);
  });

  test("movement times are cumulative from highlight, not just the dwell", () => {
    const session = new LiveSession(makePlan());
    // wander for ~2 s before settling on the target
    const { event } = runFrames(
      session,
      (t) => (t < 2_000 ? { x: 0, y: 0 } : { x: 300, y: 400 }),
      (ev) => ev.kind === "target-complete"
    );
    if (event.kind !== "target-complete") throw new Error("unreachable");
    expect(event.movementTimeMs).toBeGreaterThan(2_400);
  });

  test("payload() on a partial session throws", () => {
    const session = new LiveSession(makePlan());
    session.tick(0, 300, 400);
    expect(() => session.payload()).toThrow(/partial/);
  });

  test("restartTrial discards the current trial's progress but keeps earlier trials", () => {
    const plan = makePlan();
    const session = new LiveSession(plan);
    // finish trial 1 legitimately
    let t = 0;
    for (const target of plan.trials[0]!.targets) {
      ({ tMs: t } = runFrames(
        session,
        () => ({ x: target.xPx, y: target.yPx }),
        (ev) => ev.kind !== "none",
        t
      ));
      t += FRAME_MS;
    }
    // get partway into trial 2, then bail
    ({ tMs: t } = runFrames(
      session,
      () => ({ x: plan.trials[1]!.targets[0]!.xPx, y: plan.trials[1]!.targets[0]!.yPx }),
      (ev) => ev.kind === "target-complete",
      t
    ));
    session.restartTrial(t + FRAME_MS);
    expect(session.current()!.trialIndex).toBe(2);
    expect(session.current()!.targetOrdinal).toBe(1);

    // finish trial 2 after the restart; the payload holds full trials only
    t += 2 * FRAME_MS;
    for (const target of plan.trials[1]!.targets) {
      ({ tMs: t } = runFrames(
        session,
        () => ({ x: target.xPx, y: target.yPx }),
        (ev) => ev.kind !== "none",
        t
      ));
      t += FRAME_MS;
    }
    const payload = session.payload();
    expect(payload).toHaveLength(2);
    expect(payload[1]!.targets).toHaveLength(2);
  });

  test("path trace is recorded per trial when enabled and starts at t_s >= 0 non-decreasing", () => {
    const session = completeSession(makePlan({ recordPath: true }));
    for (const trial of session.payload()) {
      expect(trial.path).toBeDefined();
      const ts = trial.path!.map((p) => p.t_s);
      expect(ts.length).toBeGreaterThan(0);
      expect(ts[0]).toBeGreaterThanOrEqual(0);
      for (let i = 1; i < ts.length; i++) {
        expect(ts[i]!).toBeGreaterThanOrEqual(ts[i - 1]!);
      }
    }
  });

  test("path is absent when tracing is off", () => {
    const session = completeSession(makePlan());
    for (const trial of session.payload()) {
      expect(trial.path).toBeUndefined();
    }
  });
});

describe("plan validation", () => {
  test("rejects empty plans and dwell/timeout inversions", () => {
    expect(() => new LiveSession(makePlan({ trials: [] }))).toThrow(/no trials/);
    expect(
      () => new LiveSession(makePlan({ trials: [{ trialIndex: 1, targets: [] }] }))
    ).toThrow(/no targets/);
    expect(() => new LiveSession(makePlan({ timeoutMs: 400 }))).toThrow(/dwell/);
  });
});
