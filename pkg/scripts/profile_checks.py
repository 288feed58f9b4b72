"""Run each statement check over a corpus and print instance counts and timings."""
import argparse
import time

from monext.checks import REGISTRY, run_check
from monext.corpus import build_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument("--max-carrier", type=int, default=8)
    ap.add_argument("--skip", nargs="*", default=[])
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    t = time.perf_counter()
    C = build_corpus(args.max_order, args.max_carrier)
    print(f"corpus built in {time.perf_counter() - t:.1f}s", flush=True)
    for c in REGISTRY:
        if c.id in args.skip or (args.only and c.id not in args.only):
            continue
        r = run_check(c, C)
        print(f"{r.id:28s} {r.status:5s} {r.instances:7d} {r.seconds:8.2f}", r.counterexample or "", flush=True)
    print(f"total {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
