"""Builders turning oracle-generated random tables into package datasets."""
import random

from c45advisor.dataset import Dataset, Instance, nominal, numeric

from oracles import random_table


def table_dataset(kinds, cols, labels, weights, k, dedupe=False):
    schema = [
        numeric(f"a{j}", j) if kind == "numeric" else nominal(f"a{j}", [f"v{i}" for i in range(kind)], j)
        for j, kind in enumerate(kinds)
    ]
    schema.append(nominal("c", [f"k{i}" for i in range(k)], len(kinds)))
    insts, seen = [], {}
    for i, label in enumerate(labels):
        key = tuple(col[i] for col in cols)
        # drop an instance that contradicts an earlier identical one
        if dedupe and seen.setdefault(key, label) != label:
            continue
        insts.append(Instance(key + (label,), weights[i]))
    return Dataset(tuple(schema), insts, "c")


def random_dataset(seed, missing_rate=0.0, unit=False, dedupe=False):
    kinds, cols, labels, weights, k = random_table(random.Random(seed), missing_rate=missing_rate)
    if unit:
        weights = [1.0] * len(labels)
    return table_dataset(kinds, cols, labels, weights, k, dedupe)
