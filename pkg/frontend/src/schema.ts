// Wire types shared with the intake service. The service is the source of
// truth for all of these shapes; the zod schemas here let the client reject
// a malformed payload before it ever leaves the page, and give parsed,
// typed views of the service's responses.
import { z } from "zod";

export const GROUPS = ["control", "iteration1", "iteration2"] as const;
export type GroupLabel = (typeof GROUPS)[number];

export const targetEntrySchema = z
  .object({
    x_px: z.number().finite(),
    y_px: z.number().finite(),
    radius_px: z.number().finite().gte(1),
    movement_time_s: z.number().finite().gte(0),
    timeout: z.boolean(),
  })
  .strict();

export const pathPointSchema = z
  .object({
    t_s: z.number().finite().gte(0),
    x_px: z.number().finite(),
    y_px: z.number().finite(),
  })
  .strict();

// One uploaded line per trial. The config block is echoed verbatim from
// /api/targets, not constructed here: the service validates its contents,
// the client only guarantees it passes the block through untouched.
export const trialPayloadSchema = z
  .object({
    schema_version: z.literal(1),
    session_id: z.string().min(1),
    group: z.enum(GROUPS),
    source: z.literal("live"),
    participant_id: z.number().int().gte(0),
    trial_index: z.number().int().gte(1),
    targets: z.array(targetEntrySchema).min(1),
    path: z.array(pathPointSchema).optional(),
    config: z.record(z.unknown()),
  })
  .strict();

export type TargetEntry = z.infer<typeof targetEntrySchema>;
export type TrialPayload = z.infer<typeof trialPayloadSchema>;

// GET /api/targets response: the geometry a live trial must present.
export const targetsPayloadSchema = z
  .object({
    seed: z.number().int(),
    trial_index: z.number().int().gte(1),
    radius_px: z.number().gte(1),
    dwell_s: z.number().positive(),
    timeout_s: z.number().positive(),
    screen: z.object({ width: z.number().int(), height: z.number().int() }).strict(),
    config: z.record(z.unknown()),
    targets: z.array(z.object({ x_px: z.number(), y_px: z.number() }).strict()).min(1),
  })
  .strict();

export type TargetsPayload = z.infer<typeof targetsPayloadSchema>;

// POST /api/sessions responses. 201 persists, 200 means the service already
// had this session_id; both count as "the data is safe on the server".
export const uploadAcceptedSchema = z.object({
  persisted: z.boolean(),
  session_id: z.string(),
});

export const serviceErrorSchema = z.object({ error: z.string() });

// GET /api/report: counts always present, analysis only once any group has
// enough trials to summarize.
export const reportPayloadSchema = z.object({
  counts: z.record(z.object({ sessions: z.number().int(), trials: z.number().int() })),
  sources: z.object({ simulated: z.number().int(), live: z.number().int() }),
  report: z.record(z.unknown()).nullable(),
});

export type ReportPayload = z.infer<typeof reportPayloadSchema>;
