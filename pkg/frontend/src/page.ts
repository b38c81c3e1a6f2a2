// DOM shell: a canvas in the task's pixel space, one highlighted target at
// a time, a dwell progress ring, and upload handling at the end. All timing
// decisions live in LiveSession; this file only pushes frames and events in
// and pixels out.
import { IntakeClient } from "./client.js";
import { LiveSession, SessionPlan } from "./session.js";

export interface PageOptions {
  plan: SessionPlan;
  client: IntakeClient;
  root: HTMLElement;
}

export function startTaskPage(opts: PageOptions): void {
  const { plan, client, root } = opts;
  root.innerHTML = "";
  root.style.cssText =
    "margin:0;display:flex;flex-direction:column;align-items:center;" +
    "background:#111;color:#ddd;font:14px system-ui;min-height:100vh";

  const status = document.createElement("div");
  status.style.cssText = "padding:8px;min-height:1.5em";
  const canvas = document.createElement("canvas");
  canvas.width = plan.screenPx.width;
  canvas.height = plan.screenPx.height;
  // scale to the window but keep the task's aspect ratio; pointer
  // coordinates are mapped back into task space before the session sees them
  canvas.style.cssText = "max-width:100vw;max-height:90vh;background:#000;touch-action:none";
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");

  // fullscreen pins the CSS-to-task-pixel mapping for the whole session;
  // starting on a click also gives pointer events a sane origin
  const startButton = document.createElement("button");
  startButton.textContent =
    `Start session ${plan.sessionId} (${plan.trials.length} trials, ` +
    `${plan.trials[0]!.targets.length} targets each) - goes fullscreen`;
  startButton.style.cssText = "margin:24px;padding:12px 24px;font-size:16px";
  root.append(status, startButton);

  startButton.addEventListener("click", () => {
    startButton.remove();
    root.append(canvas);
    void root.requestFullscreen?.().catch(() => {
      // fullscreen denial is survivable, the mapping just may change if
      // the participant resizes the window mid-run
    });
    runSession();
  });

  function runSession(): void {
    const session = new LiveSession(plan);
    let pointer: { x: number; y: number } | null = null;

    function toTaskSpace(ev: PointerEvent): { x: number; y: number } {
      const box = canvas.getBoundingClientRect();
      return {
        x: ((ev.clientX - box.left) / box.width) * plan.screenPx.width,
        y: ((ev.clientY - box.top) / box.height) * plan.screenPx.height,
      };
    }
    canvas.addEventListener("pointermove", (ev) => {
      pointer = toTaskSpace(ev);
    });
    canvas.addEventListener("pointerleave", () => {
      pointer = null;
    });
    // Escape restarts the current trial (partial timings are discarded)
    window.addEventListener("keydown", (ev) => {
      if (ev.key === "Escape" && !session.done) {
        session.restartTrial(performance.now());
        status.textContent = "trial restarted";
      }
    });

    function frame(): void {
      if (!session.done) {
        const event = session.tick(
          performance.now(),
          pointer ? pointer.x : null,
          pointer ? pointer.y : null
        );
        if (event.kind === "target-complete") {
          status.textContent = `target ${event.targetOrdinal} in ${(event.movementTimeMs / 1000).toFixed(2)} s`;
        } else if (event.kind === "target-timeout") {
          status.textContent = `target ${event.targetOrdinal} timed out`;
        } else if (event.kind === "trial-complete") {
          status.textContent = `trial ${event.trialIndex} complete`;
        }
      }
      draw();
      if (session.done) {
        void finish(session);
        return;
      }
      requestAnimationFrame(frame);
    }

    function draw(): void {
      ctx!.clearRect(0, 0, canvas.width, canvas.height);
      const cur = session.current();
      if (!cur) return;
      const { target, dwellFraction } = cur;
      ctx!.beginPath();
      ctx!.arc(target.xPx, target.yPx, plan.radiusPx, 0, Math.PI * 2);
      ctx!.fillStyle = "#2d7";
      ctx!.fill();
      if (dwellFraction > 0) {
        ctx!.beginPath();
        ctx!.arc(target.xPx, target.yPx, plan.radiusPx + 6, -Math.PI / 2, -Math.PI / 2 + dwellFraction * Math.PI * 2);
        ctx!.strokeStyle = "#fff";
        ctx!.lineWidth = 4;
        ctx!.stroke();
      }
      ctx!.fillStyle = "#888";
      ctx!.font = "24px system-ui";
      ctx!.fillText(`trial ${cur.trialIndex} / target ${cur.targetOrdinal}`, 20, 40);
    }

    async function finish(done: LiveSession): Promise<void> {
      status.textContent = "session complete, uploading...";
      const result = await client.upload(done.payload());
      if (result.ok) {
        status.textContent = result.persisted
          ? `uploaded session ${result.sessionId}`
          : `service already holds session ${result.sessionId}`;
        return;
      }
      if (!result.retriable) {
        status.textContent = `upload rejected: ${result.reason}`;
        return;
      }
      status.textContent = `upload failed (${result.reason}); payload kept locally`;
      const retry = document.createElement("button");
      retry.textContent = "retry upload";
      retry.style.cssText = "margin:12px;padding:8px 16px";
      retry.addEventListener("click", () => {
        void client.flush().then((flushed) => {
          if (client.pendingUploads === 0) {
            retry.remove();
            status.textContent = `uploaded after retry (${flushed.delivered} delivered)`;
          } else {
            status.textContent = "still unreachable; payload kept locally";
          }
        });
      });
      root.append(retry);
    }

    requestAnimationFrame(frame);
  }
}
