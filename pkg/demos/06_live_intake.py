#!/usr/bin/env python3
"""Drive the live-session intake service over real HTTP.

Starts the intake app on a spare local port, then talks to it the way a
capture client would, using nothing but the standard library:

  GET  /api/targets   the geometry a live run must present
  POST /api/sessions  upload the measured trials (line-schema objects)
  GET  /api/report    simulated and live counts, plus the analysis

Also exercises the two mistakes a client will eventually make: sending
the same session twice, and sending a negative movement time.

Run:  python3 demos/06_live_intake.py
"""

import json
import tempfile
import threading
import time
import urllib.error
import urllib.request

import uvicorn

from gyropoint.harness import create_app

PORT = 8731
BASE = f"http://127.0.0.1:{PORT}"


def http(method, path, payload=None):
    """Tiny stdlib client: returns (status, parsed json body)."""
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(
        BASE + path, data=data, method=method,
        headers={"Content-Type": "application/json"} if data else {},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


with tempfile.TemporaryDirectory() as data_dir:
    server = uvicorn.Server(
        uvicorn.Config(create_app(data_dir), host="127.0.0.1", port=PORT, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.02)

    status, health = http("GET", "/api/health")
    print(f"service up on {BASE}: {health}")

    status, geo = http("GET", "/api/targets?seed=12&trial_index=1&count=2")
    print(f"\ntrial 1 geometry for seed 12: radius {geo['radius_px']} px, targets {geo['targets']}")

    # a live client measures movement times against that geometry, then
    # uploads one line-schema object per trial, echoing the config block
    def trial_obj(trial_index, times):
        return {
            "schema_version": 1,
            "session_id": "live-demo-p00",
            "group": "iteration2",
            "source": "live",
            "participant_id": 0,
            "trial_index": trial_index,
            "targets": [
                {"x_px": tgt["x_px"], "y_px": tgt["y_px"], "radius_px": geo["radius_px"],
                 "movement_time_s": mt, "timeout": False}
                for tgt, mt in zip(geo["targets"], times)
            ],
            "config": geo["config"],
        }

    upload = [trial_obj(1, [3.4, 2.9]), trial_obj(2, [2.7, 2.5])]
    status, body = http("POST", "/api/sessions", upload)
    print(f"\nPOST /api/sessions -> {status}: {body}")

    status, body = http("POST", "/api/sessions", upload)
    print(f"same upload again  -> {status}: {body}")

    bad = [trial_obj(3, [-1.0, 2.0])]
    bad[0]["session_id"] = "live-demo-p01"
    status, body = http("POST", "/api/sessions", bad)
    print(f"negative time      -> {status}: {body}")

    status, report = http("GET", "/api/report")
    print(f"\nGET /api/report counts: {report['counts']}  sources: {report['sources']}")
    summary = report["report"]["summaries"]["iteration2"]
    print(f"iteration2 summary from the live records: mean {summary['mean_s']:.3f} s over n={summary['n']}")

    server.should_exit = True
    thread.join(timeout=5.0)
    print("\nservice stopped; records live on in the data directory's sessions.jsonl")
