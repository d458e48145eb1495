#!/usr/bin/env python3
"""Exercise the HTTP front door end to end, the way the web client does.

Spawns the service on a free port with a throwaway store, seeds a debate
over the API, gets blocked, adopts the server's suggestion, resolves, and
closes — then restarts the service over the same store to show nothing was
lost.
"""
import json
import signal
import socket
import subprocess
import sys
import tempfile
import time
import urllib.request


def free_port() -> int:
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port


def call(port: int, method: str, path: str, body=None, agent=None):
    headers = {"Content-Type": "application/json"}
    if agent:
        headers["Authorization"] = f"Bearer {agent}"
    request = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}",
        method=method,
        data=None if body is None else json.dumps(body).encode(),
        headers=headers,
    )
    try:
        with urllib.request.urlopen(request) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as error:
        return error.code, json.loads(error.read())


def wait_up(port: int) -> None:
    for _ in range(100):
        try:
            urllib.request.urlopen(f"http://127.0.0.1:{port}/docs", timeout=1)
            return
        except Exception:
            time.sleep(0.2)
    raise SystemExit("service did not come up")


def serve(port: int, store: str) -> subprocess.Popen:
    process = subprocess.Popen(
        [sys.executable, "-m", "faf.cli", "serve", "--port", str(port), "--store", store],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    wait_up(port)
    return process


store = tempfile.mkdtemp(prefix="faf-demo-")
port = free_port()
server = serve(port, store)
print(f"service on :{port}, store {store}")

try:
    call(port, "POST", "/sessions", {
        "id": "demo",
        "question": {"id": "q1", "text": "Will it happen?"},
        "base_forecast": 0.15,
    })
    call(port, "POST", "/sessions/demo/frameworks", {
        "id": "u1",
        "proposal": {"id": "p", "forecast": 0.75, "evidence": "the poll"},
        "agents": ["alice", "bob"],
    })
    call(port, "POST", "/frameworks/u1/arguments",
         {"argument": {"id": "d1", "kind": "amendment", "direction": "decrease"}})
    call(port, "POST", "/frameworks/u1/arguments",
         {"argument": {"id": "c1", "polarity": "con"}, "edges": [["c1", "d1"]]})
    print("seeded: proposal 0.75, decrease amendment d1, con c1 attacking it")

    status, body = call(port, "POST", "/frameworks/u1/forecasts", {"value": 0.5}, agent="alice")
    print(f"alice forecasts 0.50 before voting -> {status} {body['code']}")

    for agent, vote in [("alice", 0.1), ("bob", 0.1)]:
        call(port, "POST", "/frameworks/u1/votes", {"argument_id": "c1", "value": vote}, agent=agent)
    status, rationality = call(port, "GET", "/frameworks/u1/agents/alice/rationality")
    print(f"alice confidence {rationality['confidence_score']:+.4f}, "
          f"rational interval {rationality['rational_interval']}")

    status, body = call(port, "POST", "/frameworks/u1/forecasts", {"value": 0.9}, agent="alice")
    print(f"alice forecasts 0.90 -> {status}: violations {body['violations']}, "
          f"suggestion {body['suggestion']}")
    status, body = call(port, "POST", "/frameworks/u1/forecasts",
                        {"value": body["suggestion"]}, agent="alice")
    print(f"alice adopts the suggestion -> {status} accepted={body['accepted']}")

    call(port, "POST", "/frameworks/u1/forecasts", {"value": 0.55}, agent="bob")
    status, body = call(port, "POST", "/frameworks/u1/resolve")
    print(f"resolve -> group forecast {body['group_forecast']:.4f}")

    status, report = call(port, "POST", "/sessions/demo/close", {"outcome": True})
    print(f"close -> final {report['final_forecast']:.4f}, "
          f"records for {sorted(report['records'])}")
finally:
    server.send_signal(signal.SIGKILL)
    server.wait()

print("\nSIGKILL sent; restarting over the same store...")
port = free_port()
server = serve(port, store)
try:
    status, session = call(port, "GET", "/sessions/demo")
    print(f"recovered session: closed={session['question']['outcome'] is not None}, "
          f"{len(session['frameworks'])} framework(s), status {session['frameworks'][0]['status']}")
    status, record = call(port, "GET", "/agents/alice/record")
    print(f"alice's record survived: {record}")
finally:
    server.terminate()
    server.wait()
