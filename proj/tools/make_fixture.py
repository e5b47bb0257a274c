#!/usr/bin/env python3
"""Writes the bundled test corpus under data/fixture/.

The corpus is fully determined by SEED. Conjunction slots get exactly
round(0.83 * n) "and" separators; the rest get "or". Name lists are planted
one per marked record, and their number is written to planted.json so tests
can count recoveries without trusting the generator's text.
"""
import argparse
import json
import pathlib
import random

SEED = 7
RECORDS = 200
NAME_LISTS = 40
AND_SHARE = 0.83

CATALOG = """\
# name|aliases|attributes
LeBron James|king james|team=lakers;points=38652;games=1421;rings=4
Kobe Bryant|black mamba|team=lakers;points=33643;games=1346;rings=5
Stephen Curry|steph|team=warriors;points=23668;games=956;rings=4
Kevin Durant|kd|team=warriors;points=28924;games=1123;rings=2
Klay Thompson||team=warriors;points=15143;games=838;rings=4
Kawhi Leonard||team=raptors;points=13588;games=679;rings=2
Tim Duncan||team=spurs;points=26496;games=1392;rings=5
Dirk Nowitzki||team=mavericks;points=31560;games=1522;rings=1
Lakers|los angeles lakers|kind=team
Warriors|golden state|kind=team
Bernie Sanders||party=D
Elizabeth Warren||party=D
Donald Trump||party=R
Ted Cruz||party=R
"""

HOMES = "lakers=lakers\nwarriors=warriors\n"

# (written first, written second, share written in that order)
PAIRS = {
    "food": [("salt", "pepper", 0.95), ("bread", "butter", 1.0), ("fish", "chips", 0.97),
             ("sweet", "sour", 0.9), ("macaroni", "cheese", 1.0), ("cats", "dogs", 0.6)],
    "nba": [("offense", "defense", 0.8), ("points", "rebounds", 0.9), ("win", "lose", 0.7),
            ("black", "white", 0.85)],
    "politics": [("democrats", "republicans", 0.55), ("left", "right", 0.9), ("men", "women", 0.75),
                 ("north", "south", 0.95)],
    "lakers": [("offense", "defense", 0.8), ("win", "lose", 0.7)],
    "warriors": [("offense", "defense", 0.8), ("points", "rebounds", 0.9)],
}

COMMUNITIES = ["food"] * 60 + ["nba"] * 60 + ["politics"] * 40 + ["lakers"] * 20 + ["warriors"] * 20

FILLER = ["honestly", "i think", "tonight", "really", "this season", "lol", "we had", "great stuff",
          "for real", "my take", "good times", "classic"]

NAME_POOLS = {
    "nba": [["LeBron", "Kobe Bryant", "Steph", "Durant", "Klay Thompson", "Kawhi Leonard", "Tim Duncan", "Dirk"],
            ["Lakers", "Warriors"]],
    "lakers": [["LeBron James", "Kobe", "KD", "Curry"], ["Lakers", "Warriors"]],
    "warriors": [["Curry", "Kevin Durant", "Klay", "LeBron"], ["Warriors", "Lakers"]],
    "politics": [["Bernie Sanders", "Warren", "Trump", "Ted Cruz"]],
}

# 2016-01-01 .. 2018-12-31 UTC
T0, T1 = 1451606400, 1546300799


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "fixture"))
    out = pathlib.Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)

    name_records = set(rng.sample([i for i, c in enumerate(COMMUNITIES) if c in NAME_POOLS], NAME_LISTS))

    # Plan every conjunction slot first so the and/or split is exact.
    plans = []
    slots = 0
    for i, community in enumerate(COMMUNITIES):
        binomials = []
        for _ in range(rng.randint(3, 5)):
            a, b, p = rng.choice(PAIRS[community])
            binomials.append((a, b) if rng.random() < p else (b, a))
        slots += len(binomials)
        names = None
        if i in name_records:
            pool = rng.choice(NAME_POOLS[community])
            length = rng.choice([2, 2, 2, 3]) if len(pool) >= 3 else 2
            names = rng.sample(pool, length)
            kind = rng.choice(["conj", "conj", "vs", "slash"]) if length == 2 else rng.choice(["oxford", "plain"])
            if kind == "conj":
                slots += 1
            names = (names, kind)
        plans.append((community, binomials, names))

    seps = ["and"] * round(AND_SHARE * slots) + ["or"] * (slots - round(AND_SHARE * slots))
    rng.shuffle(seps)
    seps = iter(seps)

    lines = []
    for i, (community, binomials, names) in enumerate(plans):
        parts = []
        for a, b in binomials:
            parts.append(f"{rng.choice(FILLER)} {a} {next(seps)} {b}")
        if names is not None:
            items, kind = names
            if kind == "conj":
                phrase = f"{items[0]} {next(seps)} {items[1]}"
            elif kind == "vs":
                phrase = f"{items[0]} {rng.choice(['vs', 'vs.', 'v.s.'])} {items[1]}"
            elif kind == "slash":
                phrase = f"{items[0]}/{items[1]}"
            elif kind == "oxford":
                phrase = f"{items[0]}, {items[1]}, and {items[2]}"
            else:
                phrase = f"{items[0]}, {items[1]} or {items[2]}"
            parts.insert(rng.randrange(len(parts) + 1), f"{rng.choice(FILLER)} {phrase}")
        text = ". ".join(parts) + rng.choice([".", "!", "?", ""])
        if rng.random() < 0.3:
            text = text.capitalize()
        lines.append(json.dumps({
            "body": text,
            "created_utc": rng.randint(T0, T1),
            "subreddit": community,
            "author": f"user{rng.randrange(50)}",
        }))

    (out / "corpus.jsonl").write_text("\n".join(lines) + "\n")
    (out / "catalog.txt").write_text(CATALOG)
    (out / "homes.txt").write_text(HOMES)
    planted = {
        "records": RECORDS,
        "name_lists": NAME_LISTS,
        "conjunction_slots": slots,
        "and_slots": round(AND_SHARE * slots),
    }
    (out / "planted.json").write_text(json.dumps(planted, indent=2) + "\n")


if __name__ == "__main__":
    main()
