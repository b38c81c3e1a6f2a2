// Entry point: read run parameters from the query string, fetch the plan
// from the service, and hand over to the page.
//
//   ?base=http://127.0.0.1:8000&group=iteration2&participant=0&seed=555&path=1
//
// `base` defaults to the page's own origin, which is right when the intake
// service also serves the static files or sits behind the same proxy.
import { IntakeClient } from "./client.js";
import { buildSessionPlan } from "./plan.js";
import { startTaskPage } from "./page.js";
import { GROUPS, GroupLabel } from "./schema.js";

function parseGroup(raw: string | null): GroupLabel {
  if (raw === null) return "iteration2";
  if ((GROUPS as readonly string[]).includes(raw)) return raw as GroupLabel;
  throw new Error(`unknown group ${raw}; expected one of ${GROUPS.join(", ")}`);
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const client = new IntakeClient(params.get("base") ?? window.location.origin);
  if (!(await client.health())) {
    document.body.textContent = "intake service unreachable; is it running?";
    return;
  }
  const seedRaw = params.get("seed");
  const plan = await buildSessionPlan(client, {
    group: parseGroup(params.get("group")),
    participantId: Number(params.get("participant") ?? "0"),
    seed: seedRaw === null ? undefined : Number(seedRaw),
    recordPath: params.get("path") === "1",
  });
  startTaskPage({ plan, client, root: document.body });
}

window.addEventListener("load", () => {
  void boot().catch((err) => {
    document.body.textContent = `failed to start: ${String(err)}`;
  });
});
