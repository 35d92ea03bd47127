#!/usr/bin/env python3
# Copyright 2026 The plmneuron Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled 200-sequence demo corpus.

Sequences are sampled from a handful of composition profiles so that the
descriptor distributions are spread out the way a small UniProt sample is.
Output is byte-stable for a given seed.
"""

import random
import sys

ALPHABET = "ACDEFGHIKLMNPQRSTVWY"

# Approximate UniProtKB/Swiss-Prot background composition (percent).
BACKGROUND = {
    "A": 8.25, "C": 1.38, "D": 5.46, "E": 6.72, "F": 3.86, "G": 7.07,
    "H": 2.27, "I": 5.91, "K": 5.80, "L": 9.65, "M": 2.41, "N": 4.06,
    "P": 4.74, "Q": 3.93, "R": 5.53, "S": 6.64, "T": 5.35, "V": 6.86,
    "W": 1.10, "Y": 2.92,
}

PROFILES = [
    ("cytoplasmic", {}, ["Subcellular location: Cytoplasm",
                         "GO: metabolic process"]),
    ("membrane", {"L": 2.2, "I": 2.0, "V": 2.0, "F": 1.8, "A": 1.4, "W": 1.5,
                  "D": 0.4, "E": 0.4, "K": 0.5, "R": 0.5},
     ["Subcellular location: Cell membrane; Multi-pass membrane protein",
      "GO: transmembrane transport"]),
    ("secreted", {"C": 4.0, "G": 1.5, "S": 1.4, "T": 1.3, "N": 1.3},
     ["Subcellular location: Secreted", "GO: extracellular region"]),
    ("nuclear", {"K": 2.5, "R": 2.5, "S": 1.3, "G": 1.2, "L": 0.7, "V": 0.7},
     ["Subcellular location: Nucleus", "GO: DNA binding",
      "Function: DNA replication and repair"]),
    ("acidic", {"D": 2.6, "E": 2.8, "Q": 1.5, "P": 1.5, "S": 1.3, "L": 0.6,
                "I": 0.6},
     ["Subcellular location: Cytoplasm", "Domain: intrinsically disordered",
      "Function: chaperone"]),
    ("zinc_finger", {"C": 3.0, "H": 3.0, "K": 1.4, "R": 1.4},
     ["Subcellular location: Nucleus", "Domain: C2H2-type zinc finger",
      "GO: metal ion binding"]),
]

ZF_MOTIF = "CPECGKSFSQSSNLQKHQRTH"


def weighted_alphabet(boost):
    weights = [BACKGROUND[a] * boost.get(a, 1.0) for a in ALPHABET]
    return weights


def main(seed=20260101, count=200):
    rng = random.Random(seed)
    fasta_lines = []
    ann_lines = ["# id\tannotation"]
    for i in range(count):
        name, boost, annotations = PROFILES[i % len(PROFILES)]
        length = rng.randint(40, 350)
        weights = weighted_alphabet(boost)
        seq = "".join(rng.choices(ALPHABET, weights=weights, k=length))
        if name == "zinc_finger" and length > 60:
            at = rng.randint(0, length - len(ZF_MOTIF))
            seq = seq[:at] + ZF_MOTIF + seq[at + len(ZF_MOTIF):]
        rid = "DMO%04d" % (i + 1)
        fasta_lines.append(">sp|%s|%s_SYNTH Demo %s protein %d OS=Synthetic construct"
                           % (rid, rid, name.replace("_", " "), i + 1))
        for j in range(0, len(seq), 60):
            fasta_lines.append(seq[j:j + 60])
        for a in annotations:
            ann_lines.append("sp|%s|%s_SYNTH\t%s" % (rid, rid, a))
    with open("demo_corpus.fasta", "w") as f:
        f.write("\n".join(fasta_lines) + "\n")
    with open("demo_annotations.tsv", "w") as f:
        f.write("\n".join(ann_lines) + "\n")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
