"""Generate the bundled datasets into src/flare/data/.

lenses and tic-tac-toe are complete enumerations of their domains, iris comes
from scikit-learn's bundled copy. zoo and voting-84 are authored at the
documented shape (90 x 16N x 7 classes; 435 x 16N x 2 classes) because the
original files are not redistributable here; zoo lists real animals with
their actual traits, voting-84 is drawn from a seeded per-party vote model.
"""

import csv
import random
from itertools import product
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "flare" / "data"


def write_csv(name, rows):
    with open(DATA / name, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    print(f"{name}: {len(rows)} rows")


def write_schema(name, text):
    (DATA / name).write_text(text.strip() + "\n")


# ---------------------------------------------------------------------------
# lenses: full 24-combination domain with Cendrowska's classes
# ---------------------------------------------------------------------------

def gen_lenses():
    ages = ["young", "pre-presbyopic", "presbyopic"]
    prescriptions = ["myope", "hypermetrope"]
    astigmatic = ["no", "yes"]
    tears = ["reduced", "normal"]

    def classify(age, presc, astig, tear):
        if tear == "reduced":
            return "none"
        if astig == "no":
            if age == "presbyopic" and presc == "myope":
                return "none"
            return "soft"
        if presc == "hypermetrope" and age != "young":
            return "none"
        return "hard"

    rows = [
        [a, p, s, t, classify(a, p, s, t)]
        for a, p, s, t in product(ages, prescriptions, astigmatic, tears)
    ]
    assert len(rows) == 24
    counts = {c: sum(1 for r in rows if r[4] == c) for c in ("hard", "soft", "none")}
    assert counts == {"hard": 4, "soft": 5, "none": 15}, counts
    write_csv("lenses.csv", rows)
    write_schema(
        "lenses.schema",
        """
age : nominal(young,pre-presbyopic,presbyopic)
prescription : nominal(myope,hypermetrope)
astigmatic : nominal(no,yes)
tear-rate : nominal(reduced,normal)
class : nominal(hard,soft,none)
target: class
""",
    )


# ---------------------------------------------------------------------------
# tic-tac-toe: all terminal boards, x moves first; class = x has a line
# ---------------------------------------------------------------------------

LINES = [
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
]


def _wins(board, player):
    return any(all(board[i] == player for i in line) for line in LINES)


def _last_move_could_finish(board, player):
    """Some move by `player` completed the first winning line."""
    for i, cell in enumerate(board):
        if cell == player:
            reduced = board[:i] + ("b",) + board[i + 1 :]
            if not _wins(reduced, player):
                return True
    return False


def gen_tictactoe():
    rows = []
    for board in product("xob", repeat=9):
        nx, no = board.count("x"), board.count("o")
        x_win, o_win = _wins(board, "x"), _wins(board, "o")
        if x_win and o_win:
            continue
        if x_win:
            if nx != no + 1 or not _last_move_could_finish(board, "x"):
                continue
        elif o_win:
            if nx != no or not _last_move_could_finish(board, "o"):
                continue
        elif "b" in board or nx != 5:
            continue  # game not over
        rows.append(list(board) + ["positive" if x_win else "negative"])
    assert len(rows) == 958, len(rows)
    positives = sum(1 for r in rows if r[9] == "positive")
    assert positives == 626, positives
    write_csv("tictactoe.csv", rows)
    cells = "\n".join(
        f"{name} : nominal(x,o,b)"
        for name in (
            "top-left", "top-middle", "top-right",
            "middle-left", "middle-middle", "middle-right",
            "bottom-left", "bottom-middle", "bottom-right",
        )
    )
    write_schema("tictactoe.schema", cells + "\nclass : nominal(positive,negative)\ntarget: class\n")


# ---------------------------------------------------------------------------
# iris via scikit-learn
# ---------------------------------------------------------------------------

def gen_iris():
    from sklearn.datasets import load_iris

    data = load_iris()
    names = [data.target_names[t] for t in data.target]
    rows = [
        [f"{a:g}", f"{b:g}", f"{c:g}", f"{d:g}", name]
        for (a, b, c, d), name in zip(data.data, names)
    ]
    assert len(rows) == 150
    write_csv("iris.csv", rows)
    write_schema(
        "iris.schema",
        """
sepal-length : linear(4.3,7.9)
sepal-width : linear(2.0,4.4)
petal-length : linear(1.0,6.9)
petal-width : linear(0.1,2.5)
class : nominal(setosa,versicolor,virginica)
target: class
""",
    )


# ---------------------------------------------------------------------------
# zoo: real animals, 16 traits, 7 classes
# ---------------------------------------------------------------------------

# hair feathers eggs milk airborne aquatic predator toothed backbone breathes
# venomous fins legs tail domestic catsize
ZOO = [
    # mammals (class mammal)
    ("aardvark",  1,0,0,1,0,0,1,1,1,1,0,0,4,0,0,1, "mammal"),
    ("antelope",  1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("bear",      1,0,0,1,0,0,1,1,1,1,0,0,4,0,0,1, "mammal"),
    ("boar",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("buffalo",   1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("calf",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,1,1, "mammal"),
    ("cat",       1,0,0,1,0,0,1,1,1,1,0,0,4,1,1,1, "mammal"),
    ("cavy",      1,0,0,1,0,0,0,1,1,1,0,0,4,0,1,0, "mammal"),
    ("cheetah",   1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("deer",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("dolphin",   0,0,0,1,0,1,1,1,1,1,0,1,0,1,0,1, "mammal"),
    ("elephant",  1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("fruitbat",  1,0,0,1,1,0,0,1,1,1,0,0,2,1,0,0, "mammal"),
    ("giraffe",   1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("goat",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,1,1, "mammal"),
    ("gorilla",   1,0,0,1,0,0,0,1,1,1,0,0,2,0,0,1, "mammal"),
    ("hamster",   1,0,0,1,0,0,0,1,1,1,0,0,4,1,1,0, "mammal"),
    ("hare",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,0, "mammal"),
    ("leopard",   1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("lion",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("lynx",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("mink",      1,0,0,1,0,1,1,1,1,1,0,0,4,1,0,0, "mammal"),
    ("mole",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,0, "mammal"),
    ("mongoose",  1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,0, "mammal"),
    ("opossum",   1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,0, "mammal"),
    ("oryx",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,0,1, "mammal"),
    ("platypus",  1,0,1,1,0,1,1,0,1,1,0,0,4,1,0,0, "mammal"),
    ("pony",      1,0,0,1,0,0,0,1,1,1,0,0,4,1,1,1, "mammal"),
    ("porpoise",  0,0,0,1,0,1,1,1,1,1,0,1,0,1,0,1, "mammal"),
    ("puma",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    ("raccoon",   1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,0, "mammal"),
    ("reindeer",  1,0,0,1,0,0,0,1,1,1,0,0,4,1,1,1, "mammal"),
    ("seal",      1,0,0,1,0,1,1,1,1,1,0,1,0,0,0,1, "mammal"),
    ("sealion",   1,0,0,1,0,1,1,1,1,1,0,1,2,1,0,1, "mammal"),
    ("squirrel",  1,0,0,1,0,0,0,1,1,1,0,0,2,1,0,0, "mammal"),
    ("wallaby",   1,0,0,1,0,0,0,1,1,1,0,0,2,1,0,1, "mammal"),
    ("wolf",      1,0,0,1,0,0,1,1,1,1,0,0,4,1,0,1, "mammal"),
    # birds
    ("chicken",   0,1,1,0,1,0,0,0,1,1,0,0,2,1,1,0, "bird"),
    ("crow",      0,1,1,0,1,0,1,0,1,1,0,0,2,1,0,0, "bird"),
    ("dove",      0,1,1,0,1,0,0,0,1,1,0,0,2,1,1,0, "bird"),
    ("duck",      0,1,1,0,1,1,0,0,1,1,0,0,2,1,0,0, "bird"),
    ("flamingo",  0,1,1,0,1,0,0,0,1,1,0,0,2,1,0,1, "bird"),
    ("gull",      0,1,1,0,1,1,1,0,1,1,0,0,2,1,0,0, "bird"),
    ("hawk",      0,1,1,0,1,0,1,0,1,1,0,0,2,1,0,0, "bird"),
    ("kiwi",      0,1,1,0,0,0,1,0,1,1,0,0,2,1,0,0, "bird"),
    ("lark",      0,1,1,0,1,0,0,0,1,1,0,0,2,1,0,0, "bird"),
    ("ostrich",   0,1,1,0,0,0,0,0,1,1,0,0,2,1,0,1, "bird"),
    ("parakeet",  0,1,1,0,1,0,0,0,1,1,0,0,2,1,1,0, "bird"),
    ("penguin",   0,1,1,0,0,1,1,0,1,1,0,0,2,1,0,1, "bird"),
    ("pheasant",  0,1,1,0,1,0,0,0,1,1,0,0,2,1,0,0, "bird"),
    ("rhea",      0,1,1,0,0,0,1,0,1,1,0,0,2,1,0,1, "bird"),
    ("sparrow",   0,1,1,0,1,0,0,0,1,1,0,0,2,1,0,0, "bird"),
    ("swan",      0,1,1,0,1,1,0,0,1,1,0,0,2,1,0,1, "bird"),
    ("vulture",   0,1,1,0,1,0,1,0,1,1,0,0,2,1,0,1, "bird"),
    # reptiles
    ("pitviper",  0,0,1,0,0,0,1,1,1,1,1,0,0,1,0,0, "reptile"),
    ("seasnake",  0,0,0,0,0,1,1,1,1,0,1,0,0,1,0,0, "reptile"),
    ("slowworm",  0,0,1,0,0,0,1,1,1,1,0,0,0,1,0,0, "reptile"),
    ("tortoise",  0,0,1,0,0,0,0,0,1,1,0,0,4,1,0,1, "reptile"),
    ("tuatara",   0,0,1,0,0,0,1,1,1,1,0,0,4,1,0,0, "reptile"),
    # fish
    ("bass",      0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,0, "fish"),
    ("carp",      0,0,1,0,0,1,0,1,1,0,0,1,0,1,1,0, "fish"),
    ("catfish",   0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,0, "fish"),
    ("dogfish",   0,0,0,0,0,1,1,1,1,0,0,1,0,1,0,1, "fish"),
    ("haddock",   0,0,1,0,0,1,0,1,1,0,0,1,0,1,0,0, "fish"),
    ("herring",   0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,0, "fish"),
    ("pike",      0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,1, "fish"),
    ("piranha",   0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,0, "fish"),
    ("seahorse",  0,0,1,0,0,1,0,1,1,0,0,1,0,1,0,0, "fish"),
    ("sole",      0,0,1,0,0,1,0,1,1,0,0,1,0,1,0,0, "fish"),
    ("tuna",      0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,1, "fish"),
    # amphibians
    ("frog",      0,0,1,0,0,1,1,1,1,1,0,0,4,0,0,0, "amphibian"),
    ("newt",      0,0,1,0,0,1,1,1,1,1,0,0,4,1,0,0, "amphibian"),
    ("toad",      0,0,1,0,0,1,0,1,1,1,0,0,4,0,0,0, "amphibian"),
    # insects
    ("flea",      0,0,1,0,0,0,0,0,0,1,0,0,6,0,0,0, "insect"),
    ("gnat",      0,0,1,0,1,0,0,0,0,1,0,0,6,0,0,0, "insect"),
    ("honeybee",  1,0,1,0,1,0,0,0,0,1,1,0,6,0,1,0, "insect"),
    ("housefly",  1,0,1,0,1,0,0,0,0,1,0,0,6,0,0,0, "insect"),
    ("ladybird",  0,0,1,0,1,0,1,0,0,1,0,0,6,0,0,0, "insect"),
    ("moth",      1,0,1,0,1,0,0,0,0,1,0,0,6,0,0,0, "insect"),
    ("wasp",      1,0,1,0,1,0,0,0,0,1,1,0,6,0,0,0, "insect"),
    # other invertebrates
    ("clam",      0,0,1,0,0,0,1,0,0,0,0,0,0,0,0,0, "invertebrate"),
    ("crab",      0,0,1,0,0,1,1,0,0,0,0,0,4,0,0,0, "invertebrate"),
    ("crayfish",  0,0,1,0,0,1,1,0,0,0,0,0,6,0,0,0, "invertebrate"),
    ("lobster",   0,0,1,0,0,1,1,0,0,0,0,0,6,0,0,0, "invertebrate"),
    ("octopus",   0,0,1,0,0,1,1,0,0,0,0,0,8,0,0,1, "invertebrate"),
    ("scorpion",  0,0,0,0,0,0,1,0,0,1,1,0,8,1,0,0, "invertebrate"),
    ("seawasp",   0,0,1,0,0,1,1,0,0,0,1,0,0,0,0,0, "invertebrate"),
    ("slug",      0,0,1,0,0,0,0,0,0,1,0,0,0,0,0,0, "invertebrate"),
    ("starfish",  0,0,1,0,0,1,1,0,0,0,0,0,5,0,0,0, "invertebrate"),
    ("worm",      0,0,1,0,0,0,0,0,0,1,0,0,0,0,0,0, "invertebrate"),
]

ZOO_ATTRS = [
    "hair", "feathers", "eggs", "milk", "airborne", "aquatic", "predator",
    "toothed", "backbone", "breathes", "venomous", "fins", "legs", "tail",
    "domestic", "catsize",
]


def gen_zoo():
    assert len(ZOO) == 90, len(ZOO)
    assert len({row[0] for row in ZOO}) == 90
    rows = [[str(v) for v in row[1:17]] + [row[17]] for row in ZOO]
    write_csv("zoo.csv", rows)
    lines = []
    for i, name in enumerate(ZOO_ATTRS):
        if name == "legs":
            lines.append("legs : nominal(0,2,4,5,6,8)")
        else:
            lines.append(f"{name} : nominal(0,1)")
    lines.append("class : nominal(mammal,bird,reptile,fish,amphibian,insect,invertebrate)")
    lines.append("target: class")
    write_schema("zoo.schema", "\n".join(lines))


# ---------------------------------------------------------------------------
# voting-84 surrogate: 435 members, 16 votes from a per-party model
# ---------------------------------------------------------------------------

ISSUES = [
    ("handicapped-infants", 0.60, 0.20),
    ("water-project-cost-sharing", 0.50, 0.50),
    ("adoption-of-the-budget-resolution", 0.85, 0.18),
    ("physician-fee-freeze", 0.10, 0.90),
    ("el-salvador-aid", 0.25, 0.92),
    ("religious-groups-in-schools", 0.47, 0.88),
    ("anti-satellite-test-ban", 0.75, 0.26),
    ("aid-to-nicaraguan-contras", 0.80, 0.18),
    ("mx-missile", 0.74, 0.14),
    ("immigration", 0.47, 0.55),
    ("synfuels-corporation-cutback", 0.51, 0.15),
    ("education-spending", 0.16, 0.85),
    ("superfund-right-to-sue", 0.30, 0.84),
    ("crime", 0.36, 0.96),
    ("duty-free-exports", 0.62, 0.11),
    ("export-administration-act-south-africa", 0.92, 0.64),
]

# fraction of members whose votes follow the other party's pattern; sets the
# achievable accuracy ceiling at roughly 1 - CROSSOVER
CROSSOVER = 0.015


def gen_voting():
    rng = random.Random(19840)
    rows = []
    for party, count in (("democrat", 267), ("republican", 168)):
        for _ in range(count):
            votes_like = party
            if rng.random() < CROSSOVER:
                votes_like = "republican" if party == "democrat" else "democrat"
            row = []
            for _, p_dem, p_rep in ISSUES:
                if rng.random() < 0.05:
                    row.append("?")
                    continue
                p = p_dem if votes_like == "democrat" else p_rep
                row.append("y" if rng.random() < p else "n")
            row.append(party)
            rows.append(row)
    rng.shuffle(rows)
    assert len(rows) == 435
    write_csv("voting84.csv", rows)
    lines = [f"{name} : nominal(y,n)" for name, _, _ in ISSUES]
    lines.append("party : nominal(democrat,republican)")
    lines.append("target: party")
    write_schema("voting84.schema", "\n".join(lines))


if __name__ == "__main__":
    gen_lenses()
    gen_tictactoe()
    gen_iris()
    gen_zoo()
    gen_voting()
