"""Write census files (one per semimodule plus open-question searches) to a directory."""
import argparse
import json
import os

from monext.cli import census, write_json
from monext.corpus import build_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=3)
    ap.add_argument("--max-carrier", type=int, default=8)
    ap.add_argument("--out", default="census")
    args = ap.parse_args()
    files = census(build_corpus(args.max_order, args.max_carrier))
    os.makedirs(args.out, exist_ok=True)
    for name, doc in files.items():
        write_json(os.path.join(args.out, name), doc)
    oq = files["open_questions.json"]
    print(f"{len(files) - 1} classification files written to {args.out}")
    print("A4 failure found:", oq["a4_failure"] is not None)
    print("normal non-Schreier epi found:", oq["normal_non_schreier"] is not None)
    if oq["a4_failure"]:
        print(json.dumps(oq["a4_failure"]["violation"]))


if __name__ == "__main__":
    main()
