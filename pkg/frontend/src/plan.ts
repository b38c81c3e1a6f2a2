// Assemble a SessionPlan from the service so a live run presents exactly
// the geometry a simulated run with the same seed would see.
import { IntakeClient } from "./client.js";
import { GroupLabel } from "./schema.js";
import { SessionPlan, TrialPlan } from "./session.js";

export interface PlanRequest {
  group: GroupLabel;
  participantId: number;
  seed?: number; // service default when omitted
  trialCount?: number; // default: trials_per_participant from the config
  sessionId?: string;
  recordPath?: boolean;
}

export async function buildSessionPlan(
  client: IntakeClient,
  req: PlanRequest
): Promise<SessionPlan> {
  const first = await client.fetchTargets({ trialIndex: 1, seed: req.seed });
  const trialCount = req.trialCount ?? readTrialCount(first.config);

  const trials: TrialPlan[] = [
    { trialIndex: 1, targets: first.targets.map((t) => ({ xPx: t.x_px, yPx: t.y_px })) },
  ];
  for (let k = 2; k <= trialCount; k++) {
    const page = await client.fetchTargets({ trialIndex: k, seed: req.seed });
    trials.push({
      trialIndex: k,
      targets: page.targets.map((t) => ({ xPx: t.x_px, yPx: t.y_px })),
    });
  }

  return {
    sessionId: req.sessionId ?? freshSessionId(req.group, req.participantId),
    group: req.group,
    participantId: req.participantId,
    radiusPx: first.radius_px,
    dwellMs: first.dwell_s * 1000,
    timeoutMs: first.timeout_s * 1000,
    screenPx: { width: first.screen.width, height: first.screen.height },
    trials,
    config: first.config,
    recordPath: req.recordPath ?? false,
  };
}

function readTrialCount(config: Record<string, unknown>): number {
  const n = config["trials_per_participant"];
  if (typeof n !== "number" || !Number.isInteger(n) || n < 1) {
    throw new Error("config snapshot lacks a usable trials_per_participant");
  }
  return n;
}

function freshSessionId(group: GroupLabel, participantId: number): string {
  // uniqueness is what the service keys idempotency on, so lean on the
  // platform RNG rather than a timestamp that two tabs could share
  const nonce =
    typeof crypto !== "undefined" && "randomUUID" in crypto
      ? crypto.randomUUID().slice(0, 8)
      : Math.random().toString(36).slice(2, 10);
  return `live-${group}-p${participantId.toString().padStart(2, "0")}-${nonce}`;
}
