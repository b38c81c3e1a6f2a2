// Live-session state machine. Deliberately DOM-free: the page feeds it
// timestamps and pointer positions, tests feed it scripted ones, and both
// get identical timing behaviour.
import { GroupLabel, TrialPayload, trialPayloadSchema } from "./schema.js";

export interface TargetSpec {
  xPx: number;
  yPx: number;
}

export interface TrialPlan {
  trialIndex: number;
  targets: TargetSpec[];
}

export interface SessionPlan {
  sessionId: string;
  group: GroupLabel;
  participantId: number;
  radiusPx: number;
  dwellMs: number;
  timeoutMs: number; // per target, measured from its highlight
  screenPx: { width: number; height: number }; // task space the targets live in
  trials: TrialPlan[];
  // opaque snapshot from /api/targets, echoed verbatim in every upload
  config: Record<string, unknown>;
  recordPath?: boolean;
}

export interface CurrentTarget {
  trialIndex: number;
  targetOrdinal: number; // 1-based position within the trial
  target: TargetSpec;
  dwellFraction: number; // 0..1, for drawing the progress ring
}

export type TickEvent =
  | { kind: "none" }
  | { kind: "target-complete"; trialIndex: number; targetOrdinal: number; movementTimeMs: number }
  | { kind: "target-timeout"; trialIndex: number; targetOrdinal: number }
  | { kind: "trial-complete"; trialIndex: number }
  | { kind: "session-complete" };

interface TargetTiming {
  target: TargetSpec;
  movementTimeMs: number;
  timedOut: boolean;
}

interface PathPoint {
  tMs: number; // since trial start
  x: number;
  y: number;
}

export class LiveSession {
  private readonly plan: SessionPlan;
  private trialCursor = 0;
  private targetCursor = 0;
  private dwellAccumMs = 0;
  private highlightMs: number | null = null; // null until the first tick arms it
  private trialStartMs = 0;
  private lastTickMs: number | null = null;
  private readonly timings: TargetTiming[][] = [];
  private readonly traces: PathPoint[][] = [];

  constructor(plan: SessionPlan) {
    if (plan.trials.length === 0) {
      throw new Error("session plan has no trials");
    }
    for (const trial of plan.trials) {
      if (trial.targets.length === 0) {
        throw new Error(`trial ${trial.trialIndex} has no targets`);
      }
    }
    if (plan.dwellMs <= 0 || plan.timeoutMs <= plan.dwellMs) {
      throw new Error("need 0 < dwell < timeout");
    }
    this.plan = plan;
    this.timings.push([]);
    this.traces.push([]);
  }

  get done(): boolean {
    return this.trialCursor >= this.plan.trials.length;
  }

  get sessionId(): string {
    return this.plan.sessionId;
  }

  current(): CurrentTarget | null {
    if (this.done) return null;
    const trial = this.plan.trials[this.trialCursor]!;
    return {
      trialIndex: trial.trialIndex,
      targetOrdinal: this.targetCursor + 1,
      target: trial.targets[this.targetCursor]!,
      dwellFraction: Math.min(this.dwellAccumMs / this.plan.dwellMs, 1),
    };
  }

  /**
   * Advance the session to `nowMs` with the pointer at (x, y); null means
   * the pointer is off the page. Call once per animation frame. Timestamps
   * must come from a monotonic clock (performance.now); time running
   * backwards is a caller bug and throws rather than producing a negative
   * timing.
   */
  tick(nowMs: number, x: number | null, y: number | null): TickEvent {
    if (this.done) return { kind: "session-complete" };
    if (this.lastTickMs !== null && nowMs < this.lastTickMs) {
      throw new Error(`clock went backwards: ${nowMs} < ${this.lastTickMs}`);
    }
    const dt = this.lastTickMs === null ? 0 : nowMs - this.lastTickMs;
    this.lastTickMs = nowMs;
    if (this.highlightMs === null) {
      // first frame: the first target becomes visible now
      this.highlightMs = nowMs;
      this.trialStartMs = nowMs;
    }

    const trial = this.plan.trials[this.trialCursor]!;
    const target = trial.targets[this.targetCursor]!;

    if (this.plan.recordPath && x !== null && y !== null) {
      this.traces[this.trialCursor]!.push({ tMs: nowMs - this.trialStartMs, x, y });
    }

    const inside =
      x !== null &&
      y !== null &&
      (x - target.xPx) ** 2 + (y - target.yPx) ** 2 <= this.plan.radiusPx ** 2;
    if (inside) {
      this.dwellAccumMs += dt;
    } else {
      this.dwellAccumMs = 0; // leaving the target always voids partial dwell
    }

    if (this.dwellAccumMs >= this.plan.dwellMs - 1e-9) {
      const mt = nowMs - this.highlightMs;
      return this.completeTarget(trial, target, nowMs, mt, false);
    }
    if (nowMs - this.highlightMs >= this.plan.timeoutMs) {
      // mirror the simulator: a timed-out target is charged its full budget
      return this.completeTarget(trial, target, nowMs, this.plan.timeoutMs, true);
    }
    return { kind: "none" };
  }

  private completeTarget(
    trial: TrialPlan,
    target: TargetSpec,
    nowMs: number,
    movementTimeMs: number,
    timedOut: boolean
  ): TickEvent {
    this.timings[this.trialCursor]!.push({ target, movementTimeMs, timedOut });
    const ordinal = this.targetCursor + 1;
    this.targetCursor += 1;
    this.dwellAccumMs = 0;
    this.highlightMs = nowMs;
    if (this.targetCursor < trial.targets.length) {
      return timedOut
        ? { kind: "target-timeout", trialIndex: trial.trialIndex, targetOrdinal: ordinal }
        : {
            kind: "target-complete",
            trialIndex: trial.trialIndex,
            targetOrdinal: ordinal,
            movementTimeMs,
          };
    }
    this.trialCursor += 1;
    this.targetCursor = 0;
    this.trialStartMs = nowMs;
    if (this.trialCursor < this.plan.trials.length) {
      this.timings.push([]);
      this.traces.push([]);
      return { kind: "trial-complete", trialIndex: trial.trialIndex };
    }
    return { kind: "session-complete" };
  }

  /**
   * Throw away the in-progress trial and present it again from its first
   * target. Earlier completed trials keep their timings; the discarded
   * partial never reaches payload().
   */
  restartTrial(nowMs: number): void {
    if (this.done) {
      throw new Error("session already complete");
    }
    this.timings[this.trialCursor] = [];
    this.traces[this.trialCursor] = [];
    this.targetCursor = 0;
    this.dwellAccumMs = 0;
    this.highlightMs = nowMs;
    this.trialStartMs = nowMs;
    this.lastTickMs = nowMs;
  }

  /**
   * The upload payload, one line-schema object per trial. Only a finished
   * session has one; partial sessions must never be uploaded.
   */
  payload(): TrialPayload[] {
    if (!this.done) {
      throw new Error("session incomplete: refusing to build a partial payload");
    }
    const out: TrialPayload[] = [];
    for (let i = 0; i < this.plan.trials.length; i++) {
      const trial = this.plan.trials[i]!;
      const obj: TrialPayload = {
        schema_version: 1,
        session_id: this.plan.sessionId,
        group: this.plan.group,
        source: "live",
        participant_id: this.plan.participantId,
        trial_index: trial.trialIndex,
        targets: this.timings[i]!.map((t) => ({
          x_px: t.target.xPx,
          y_px: t.target.yPx,
          radius_px: this.plan.radiusPx,
          movement_time_s: t.movementTimeMs / 1000,
          timeout: t.timedOut,
        })),
        config: this.plan.config,
      };
      if (this.plan.recordPath) {
        obj.path = this.traces[i]!.map((p) => ({
          t_s: p.tMs / 1000,
          x_px: p.x,
          y_px: p.y,
        }));
      }
      // belt and braces: never let a payload leave the page that the
      // service would have to reject
      out.push(trialPayloadSchema.parse(obj));
    }
    return out;
  }
}
