// End-to-end round trip against the real intake service: a scripted
// session completes the full task and uploads it, the service's report
// reflects it, and a corrupted payload bounces without touching the store.
// Requires the python package's `gyropoint` CLI on PATH.
import { afterAll, beforeAll, describe, expect, test } from "vitest";
import { ChildProcess, execFile, spawn } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { IntakeClient } from "../src/client.js";
import { buildSessionPlan } from "../src/plan.js";
import { LiveSession } from "../src/session.js";

const PORT = 8753;
const BASE = `http://127.0.0.1:${PORT}`;
const SEED = 909;
const FRAME_MS = 1000 / 60;

let service: ChildProcess;
let dataDir: string;

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "intake-"));
  service = spawn("gyropoint", ["serve", "--port", String(PORT), "--data-dir", dataDir], {
    stdio: "ignore",
  });
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const resp = await fetch(`${BASE}/api/health`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("intake service never came up");
    await new Promise((r) => setTimeout(r, 150));
  }
}, 25_000);

afterAll(() => {
  service?.kill();
});

function sessionsFile(): string {
  try {
    return readFileSync(join(dataDir, "sessions.jsonl"), "utf8");
  } catch {
    return "";
  }
}

/** Complete every target by parking the pointer on it, 60 fps frames. */
function completeWholeSession(session: LiveSession): void {
  let t = 0;
  let guard = 0;
  while (!session.done) {
    const target = session.current()!.target;
    const ev = session.tick(t, target.xPx, target.yPx);
    t += FRAME_MS;
    if (ev.kind === "session-complete") break;
    if (++guard > 1_000_000) throw new Error("session never completed");
  }
}

describe("live intake round trip", () => {
  test(
    "scripted full session uploads and lands in the live counts",
    async () => {
      const client = new IntakeClient(BASE);
      const plan = await buildSessionPlan(client, {
        group: "iteration2",
        participantId: 7,
        seed: SEED,
        sessionId: "live-scripted-p07",
      });

      // default task shape: the full session is 4 trials of 4 targets
      expect(plan.trials).toHaveLength(4);
      for (const trial of plan.trials) {
        expect(trial.targets).toHaveLength(4);
      }

      const session = new LiveSession(plan);
      completeWholeSession(session);
      const payload = session.payload();
      expect(payload).toHaveLength(4);
      expect(payload.every((p) => p.targets.length === 4)).toBe(true);
      // parked pointer: every movement time is the dwell, one frame of slack
      for (const trial of payload) {
        for (const entry of trial.targets) {
          expect(entry.movement_time_s).toBeGreaterThanOrEqual(0.5 - 1e-9);
          expect(entry.movement_time_s).toBeLessThanOrEqual(0.5 + FRAME_MS / 1000 + 1e-9);
        }
      }

      const result = await client.upload(payload);
      expect(result).toEqual({
        ok: true,
        persisted: true,
        sessionId: "live-scripted-p07",
      });

      const report = await client.fetchReport();
      expect(report.counts["iteration2"]).toEqual({ sessions: 1, trials: 4 });
      expect(report.sources.live).toBe(4);
      expect(report.sources.simulated).toBe(0);

      // one JSONL line per trial reached the store
      expect(sessionsFile().trim().split("\n")).toHaveLength(4);
    },
    30_000
  );

  test(
    "live geometry equals the target generator's output for the same seed",
    async () => {
      const client = new IntakeClient(BASE);
      const plan = await buildSessionPlan(client, {
        group: "control",
        participantId: 0,
        seed: SEED,
        sessionId: "live-geometry-check",
      });
      const { stdout } = await promisify(execFile)("gyropoint", [
        "targets",
        "--seed",
        String(SEED),
        "--trial",
        "1",
      ]);
      const generated = JSON.parse(stdout) as {
        targets: Array<{ x_px: number; y_px: number }>;
      };
      expect(plan.trials[0]!.targets).toEqual(
        generated.targets.map((t) => ({ xPx: t.x_px, yPx: t.y_px }))
      );
    },
    30_000
  );

  test(
    "negative movement time is refused and nothing is persisted",
    async () => {
      const before = sessionsFile();
      const client = new IntakeClient(BASE);
      const plan = await buildSessionPlan(client, {
        group: "iteration2",
        participantId: 8,
        seed: SEED,
        sessionId: "live-negative-mt",
      });
      const session = new LiveSession(plan);
      completeWholeSession(session);
      const payload = session.payload();
      payload[0]!.targets[0]!.movement_time_s = -0.25;

      // the client's own validation refuses to send it...
      await expect(client.upload(payload)).rejects.toThrow();

      // ...and the service refuses it when sent raw, persisting nothing
      const resp = await fetch(`${BASE}/api/sessions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      });
      expect(resp.status).toBe(422);
      const body = (await resp.json()) as { error: string };
      expect(body.error).toContain("movement_time_s");
      expect(sessionsFile()).toBe(before);

      const report = await client.fetchReport();
      expect(report.counts["iteration2"]).toEqual({ sessions: 1, trials: 4 });
    },
    30_000
  );

  test(
    "re-uploading the same session is acknowledged without duplicating records",
    async () => {
      const before = sessionsFile();
      const client = new IntakeClient(BASE);
      const plan = await buildSessionPlan(client, {
        group: "iteration2",
        participantId: 7,
        seed: SEED,
        sessionId: "live-scripted-p07", // same id as the first test
      });
      const session = new LiveSession(plan);
      completeWholeSession(session);
      const result = await client.upload(session.payload());
      expect(result.ok).toBe(true);
      if (!result.ok) throw new Error("unreachable");
      expect(result.persisted).toBe(false);
      expect(sessionsFile()).toBe(before);
    },
    30_000
  );
});
