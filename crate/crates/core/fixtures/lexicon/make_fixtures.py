"""Regenerates lexicon.json and toy.vec.

The embedding table is synthetic: each cluster of related words shares a
random base direction plus small per-word noise, so in-cluster cosines sit
around 0.9 and unrelated words stay well under 0.5. Seeded, so the output is
byte-stable.
"""

import json
from pathlib import Path

import numpy as np

DIM = 50
HERE = Path(__file__).resolve().parent

ANIMATIONS = """look walk run sit stand turn talk jump throw laugh give take pick drop open
close push pull kick punch hug kiss wave point nod shake cry smile dance climb fall crawl
eat drink sleep wake lie kneel lean enter exit go come follow carry hold touch grab hit
shoot drive read""".split()

SYNONYMS = {
    "gaze": "look", "stroll": "walk", "stride": "walk", "march": "walk", "sprint": "run",
    "dash": "run", "jog": "run", "spin": "turn", "rotate": "turn", "speak": "talk",
    "say": "talk", "leap": "jump", "hop": "jump", "toss": "throw", "hurl": "throw",
    "giggle": "laugh", "chuckle": "laugh", "hand": "give", "seize": "grab", "lift": "pick",
    "shut": "close", "shove": "push", "drag": "pull", "embrace": "hug", "sob": "cry",
    "weep": "cry", "grin": "smile", "gesture": "point", "tumble": "fall", "collapse": "fall",
    "sip": "drink", "nap": "sleep", "recline": "lie", "strike": "hit", "slap": "hit",
    "fire": "shoot", "grip": "hold", "approach": "come", "depart": "exit", "chase": "follow",
}

ANTONYMS = {
    "open": ["close"], "sit": ["stand"], "push": ["pull"], "give": ["take"],
    "enter": ["exit"], "come": ["go"], "laugh": ["cry"], "sleep": ["wake"],
}

HYPERNYMS = {
    "tiptoe": ["walk", "move"], "scurry": ["run", "move"], "squat": ["sit"],
    "devour": ["eat"], "gulp": ["drink"], "scribble": ["write"],
}

HOLONYMS = {"pickup": ["truck"], "wheel": ["car", "truck"], "flame": ["campfire"]}

OBJECTS = """campfire truck tent car chair table door ball book glass letter phone gun
bag bed window toothbrush water""".split()

# Extra vocabulary grouped with the word whose direction it shares.
CLUSTERS = {
    "look": ["squint", "peer", "stare", "glance"],
    "talk": ["argue", "chat", "whisper"],
    "angry": ["furious", "mad", "angrily", "furiously"],
    "happy": ["joyful", "glad", "happily", "cheerful"],
    "sad": ["unhappy", "sadly", "gloomy"],
    "scared": ["afraid", "terrified", "nervously"],
    "surprised": ["shocked", "amazed", "astonished"],
    "disgusted": ["revolted", "repulsed"],
    "campfire": ["bonfire"],
    "truck": ["lorry"],
    "car": ["automobile"],
    "quickly": ["fast", "rapidly", "hastily"],
    "slowly": ["gradually", "leisurely", "carefully"],
}

# Words with their own unrelated direction.
LONERS = """watch pickup wheel flame tiptoe scurry squat devour gulp scribble move write
the a he she they it him her them kim jim ann tom kevin
man woman girl boy door kitchen water house night day""".split()

# Antonyms sit close together, as they do in real distributional tables.
NEAR_PAIRS = [("open", "close", 0.75), ("sit", "stand", 0.7), ("push", "pull", 0.7)]


def main() -> None:
    rng = np.random.default_rng(20191103)
    vectors: dict[str, np.ndarray] = {}

    def unit(v: np.ndarray) -> np.ndarray:
        return v / np.linalg.norm(v)

    def fresh() -> np.ndarray:
        return unit(rng.standard_normal(DIM))

    def near(base: np.ndarray, noise: float = 0.35) -> np.ndarray:
        return unit(base + noise * unit(rng.standard_normal(DIM)))

    heads = ANIMATIONS + OBJECTS + [h for h in CLUSTERS if h not in ANIMATIONS + OBJECTS]
    for w in heads:
        vectors[w] = fresh()
    for a, b, cos in NEAR_PAIRS:
        ortho = fresh()
        ortho = unit(ortho - ortho.dot(vectors[a]) * vectors[a])
        vectors[b] = unit(cos * vectors[a] + np.sqrt(1 - cos**2) * ortho)
    for syn, target in SYNONYMS.items():
        vectors[syn] = near(vectors[target])
    for head, members in CLUSTERS.items():
        for m in members:
            vectors[m] = near(vectors[head])
    for w in LONERS:
        if w not in vectors:
            vectors[w] = fresh()

    words = sorted(vectors)
    with open(HERE / "toy.vec", "w") as f:
        f.write(f"{len(words)} {DIM}\n")
        for w in words:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")

    lexicon = {
        "animations": ANIMATIONS,
        "synonyms": SYNONYMS,
        "antonyms": ANTONYMS,
        "hypernyms": HYPERNYMS,
        "holonyms": HOLONYMS,
        "objects": OBJECTS,
    }
    with open(HERE / "lexicon.json", "w") as f:
        json.dump(lexicon, f, indent=2)
        f.write("\n")

    assert len(ANIMATIONS) == 52 and len(set(ANIMATIONS)) == 52
    assert len(ANIMATIONS) + len(SYNONYMS) == 92
    assert all(t in ANIMATIONS for t in SYNONYMS.values())


if __name__ == "__main__":
    main()
