#!/usr/bin/env python3
# Copyright 2026 The molrl Authors.
# SPDX-License-Identifier: Apache-2.0
"""Recomputes the string-level eval metrics and compares them with eval.json.

usage: eval_reference.py MOLRL_BINARY SAMPLES TRAIN_ACTIVES TEST_ACTIVES OUT_DIR
"""
import collections, json, re, subprocess, sys

TOKEN = re.compile(r"\[[^\]]*\]|Cl|Br|%\d\d|.")

def lines(path, labeled):
    out = []
    for raw in open(path):
        raw = raw.rstrip("\r\n")
        if not raw or raw.startswith("#"):
            continue
        smi, _, label = raw.partition("\t")
        if not labeled or label in ("", "1"):
            out.append(smi.strip())
    return out

def main():
    tool, samples_path, train_path, test_path, out = sys.argv[1:6]
    subprocess.run([tool, "eval", "--out", out, "--set", "samples=" + samples_path,
                    "--set", "train_actives=" + train_path, "--set", "test_actives=" + test_path], check=True)
    got = json.load(open(out + "/eval.json"))
    samples = lines(samples_path, False)[1:]  # drop the "smiles" header
    train, test = set(lines(train_path, True)), set(lines(test_path, True))
    n = len(samples)
    tokens = collections.Counter(t for s in samples for t in TOKEN.findall(s))
    modal_count = max(tokens.values())
    modal = min(t for t, c in tokens.items() if c == modal_count)
    want = {
        "num_samples": n,
        "fraction_unique": len(set(samples)) / n,
        "modal_token": modal,
        "modal_token_frequency": modal_count / sum(tokens.values()),
        "fraction_recovered_train_active": len(train & set(samples)) / len(train),
        "fraction_recovered_test_active": len(test & set(samples)) / len(test),
        "probability_test_active": sum(s in test for s in samples) / n,
    }
    bad = 0
    for key, value in want.items():
        ok = got[key] == value if isinstance(value, str) else abs(got[key] - value) < 1e-12
        print(("ok   " if ok else "FAIL ") + key, got[key], value)
        bad += not ok
    return 1 if bad else 0

if __name__ == "__main__":
    sys.exit(main())
