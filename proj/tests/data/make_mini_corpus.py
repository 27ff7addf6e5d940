#!/usr/bin/env python3
"""Regenerates mini_corpus.csv (60 records, 10 affiliated with Saudi Arabia)."""
import csv
import random
import sys

THEMES = {
    "learning": ["machine learning", "deep learning", "neural network", "training data",
                 "classification model", "prediction accuracy", "feature selection"],
    "city": ["smart city", "urban mobility", "internet of things", "sensor network",
             "energy consumption", "traffic management", "public services"],
    "health": ["health care", "medical imaging", "patient records", "disease diagnosis",
               "clinical decision", "hospital management", "risk assessment"],
    "business": ["supply chain", "customer behavior", "decision support", "business process",
                 "financial forecasting", "market analysis", "digital transformation"],
}
FILLERS = ["we", "propose", "a", "novel", "approach", "for", "the", "study", "of", "and",
           "results", "show", "that", "this", "method", "improves", "on", "existing", "work",
           "in", "with", "evaluated", "using", "real", "data", "framework"]
TYPES = ["Conference Paper", "Article", "Book Chapter", "Conference Review", "Book", "Editorial"]
TYPE_WEIGHTS = [30, 20, 5, 2, 2, 1]
COUNTRIES = ["United States", "China", "India", "United Kingdom", "Germany", "Brazil", "Egypt"]
YEAR_WEIGHTS = {2012: 1, 2013: 1, 2014: 2, 2015: 2, 2016: 3, 2017: 4, 2018: 6, 2019: 8,
                2020: 10, 2021: 12}


def sentence(rng, themes, n_phrases):
    words = []
    for _ in range(n_phrases):
        words += rng.sample(FILLERS, 3)
        words += rng.choice(THEMES[rng.choice(themes)]).split()
    return " ".join(words)


def main(path):
    rng = random.Random(20240601)
    years = [y for y, w in YEAR_WEIGHTS.items() for _ in range(w)]
    saudi = set(rng.sample(range(60), 10))
    rows = []
    for i in range(60):
        themes = rng.sample(sorted(THEMES), 2)
        title = sentence(rng, themes, 1).capitalize()
        abstract = ". ".join(sentence(rng, themes, 4) for _ in range(3)) + "."
        keywords = "; ".join(rng.choice(THEMES[t]) for t in themes)
        year = "" if i == 41 else str(rng.choice(years))
        doc_type = rng.choices(TYPES, TYPE_WEIGHTS)[0]
        countries = [rng.choice(COUNTRIES)]
        if i in saudi:
            countries = ["Saudi Arabia"] + ([countries[0]] if rng.random() < 0.4 else [])
        rows.append([f"doc{i + 1:03d}", title, abstract, keywords, year, doc_type,
                     "; ".join(countries)])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "title", "abstract", "keywords", "year", "doc_type", "countries"])
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "mini_corpus.csv")
