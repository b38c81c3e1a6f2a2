// HTTP client for the intake service, plus the retry buffer for uploads
// that could not reach it. The buffer is the page's only local state: a
// payload sits there until the service confirms it is safe, either by
// persisting it or by reporting the session_id as already known.
import {
  ReportPayload,
  TargetsPayload,
  TrialPayload,
  reportPayloadSchema,
  serviceErrorSchema,
  targetsPayloadSchema,
  trialPayloadSchema,
  uploadAcceptedSchema,
} from "./schema.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export type UploadResult =
  | { ok: true; persisted: boolean; sessionId: string }
  | { ok: false; retriable: boolean; reason: string };

export interface FlushResult {
  delivered: number; // confirmed safe on the server
  rejected: number; // refused outright; retrying identical bytes cannot help
}

export interface TargetsQuery {
  trialIndex: number;
  seed?: number;
  count?: number;
}

export class IntakeClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private readonly queue: TrialPayload[][] = [];

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    // bind: a bare window.fetch loses its receiver and throws in browsers
    this.fetchFn = fetchFn ?? ((url, init) => globalThis.fetch(url, init));
  }

  get pendingUploads(): number {
    return this.queue.length;
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchFn(`${this.baseUrl}/api/health`);
      return resp.ok;
    } catch {
      return false;
    }
  }

  async fetchTargets(q: TargetsQuery): Promise<TargetsPayload> {
    const params = new URLSearchParams({ trial_index: String(q.trialIndex) });
    if (q.seed !== undefined) params.set("seed", String(q.seed));
    if (q.count !== undefined) params.set("count", String(q.count));
    const resp = await this.fetchFn(`${this.baseUrl}/api/targets?${params}`);
    if (!resp.ok) {
      throw new Error(`targets request failed: ${await describeFailure(resp)}`);
    }
    return targetsPayloadSchema.parse(await resp.json());
  }

  async fetchReport(): Promise<ReportPayload> {
    const resp = await this.fetchFn(`${this.baseUrl}/api/report`);
    if (!resp.ok) {
      throw new Error(`report request failed: ${await describeFailure(resp)}`);
    }
    return reportPayloadSchema.parse(await resp.json());
  }

  /**
   * Upload one session. Failures that might clear up (network down, 5xx)
   * queue the payload for flush(); a 4xx rejection does not, because
   * resending identical bytes cannot succeed and the caller needs to hear
   * about the defect instead.
   */
  async upload(trials: TrialPayload[]): Promise<UploadResult> {
    const result = await this.attempt(trials);
    if (!result.ok && result.retriable) {
      this.queue.push(trials);
    }
    return result;
  }

  /**
   * Retry queued uploads in order. A payload leaves the queue when the
   * service confirms it or refuses it outright; the first still-unreachable
   * payload stops the pass and keeps its place at the head.
   */
  async flush(): Promise<FlushResult> {
    const out: FlushResult = { delivered: 0, rejected: 0 };
    while (this.queue.length > 0) {
      const result = await this.attempt(this.queue[0]!);
      if (!result.ok && result.retriable) break;
      this.queue.shift();
      if (result.ok) out.delivered += 1;
      else out.rejected += 1;
    }
    return out;
  }

  private async attempt(trials: TrialPayload[]): Promise<UploadResult> {
    // validate before sending; a local schema bug should fail loudly here,
    // not put garbage on the wire
    trials.forEach((t) => trialPayloadSchema.parse(t));
    let resp: Response;
    try {
      resp = await this.fetchFn(`${this.baseUrl}/api/sessions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(trials),
      });
    } catch (err) {
      return { ok: false, retriable: true, reason: `network failure: ${String(err)}` };
    }
    // 201 persisted now; 200 means the service already holds this
    // session_id, which is the same guarantee after a retried upload
    if (resp.status === 200 || resp.status === 201) {
      const body = uploadAcceptedSchema.parse(await resp.json());
      return { ok: true, persisted: body.persisted, sessionId: body.session_id };
    }
    if (resp.status >= 500) {
      return { ok: false, retriable: true, reason: `server error ${resp.status}` };
    }
    return { ok: false, retriable: false, reason: await describeFailure(resp) };
  }
}

async function describeFailure(resp: Response): Promise<string> {
  try {
    const parsed = serviceErrorSchema.safeParse(await resp.json());
    if (parsed.success) return `${resp.status}: ${parsed.data.error}`;
  } catch {
    // body was not JSON; fall through to the status line
  }
  return `status ${resp.status}`;
}
