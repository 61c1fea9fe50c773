"""Collects one status line per acceptance criterion for the session summary."""

RESULTS = []


def record(label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"{label}: {status}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    return ok
