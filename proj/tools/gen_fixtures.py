#!/usr/bin/env python3
# Copyright 2026 The Collo Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled test fixtures (deterministic).

Writes into the directory given as the only argument:
  corpus.conllu   200 parsed sentences, 100 each for the verbs 解决 and 体验
  ged.conllu      parsed sentences of the detection dataset
  ged.jsonl       the detection dataset (JSON Lines)
  sememes.tsv     word -> sememes
  hypernyms.tsv   sememe -> parent sememe
  mine.conf       mining configuration for the corpus
"""

import json
import os
import random
import sys

POS = {
    "NN": ("NOUN", "NN"),
    "PN": ("PRON", "PN"),
    "NR": ("PROPN", "NR"),
    "AD": ("ADV", "AD"),
    "VV": ("VERB", "VV"),
    "AS": ("PART", "AS"),
    "P": ("ADP", "P"),
    "PU": ("PUNCT", "PU"),
}

SUBJECTS = ["他们", "我们", "政府", "公司", "专家", "学生"]
ADVERBS = ["终于", "及时", "认真", "已经", "彻底", "努力"]
PROBLEMS = ["问题", "困难", "矛盾", "纠纷", "难题", "争议"]
PLACES = ["北京", "上海", "农村", "社区", "基层", "学校"]
EXPERIENCES = ["生活", "文化", "乐趣", "风情", "感觉", "魅力"]
VISITORS = ["游客", "孩子", "读者", "观众", "市民", "青年"]


def sentence(rng, template, verb):
    """Returns a list of (form, tag, head, deprel); heads are 1-based."""
    s = rng.choice(SUBJECTS)
    if verb == "解决":
        if template == 0:
            return [(s, "PN", 3, "nsubj"), (rng.choice(ADVERBS), "AD", 3, "advmod"),
                    ("解决", "VV", 0, "root"), ("了", "AS", 3, "asp"),
                    (rng.choice(PROBLEMS), "NN", 3, "dobj"), ("。", "PU", 3, "punct")]
        if template == 1:
            return [(s, "PN", 2, "nsubj"), ("希望", "VV", 0, "root"),
                    (rng.choice(VISITORS), "NN", 4, "nsubj"), ("解决", "VV", 2, "ccomp"),
                    (rng.choice(PROBLEMS), "NN", 4, "dobj"), ("。", "PU", 2, "punct")]
        return [(s, "PN", 4, "nsubj"), ("在", "P", 3, "case"), (rng.choice(PLACES), "NR", 4, "nmod:prep"),
                ("解决", "VV", 0, "root"), (rng.choice(PROBLEMS), "NN", 4, "dobj"), ("。", "PU", 4, "punct")]
    v = rng.choice(VISITORS)
    if template == 0:
        return [(v, "NN", 3, "nsubj"), ("亲自", "AD", 3, "advmod"), ("体验", "VV", 0, "root"),
                ("了", "AS", 3, "asp"), (rng.choice(EXPERIENCES), "NN", 3, "dobj"), ("。", "PU", 3, "punct")]
    if template == 1:
        return [(v, "NN", 2, "nsubj"), ("想", "VV", 0, "root"), ("体验", "VV", 2, "xcomp"),
                (rng.choice(EXPERIENCES), "NN", 3, "dobj"), ("。", "PU", 2, "punct")]
    return [(v, "NN", 4, "nsubj"), ("在", "P", 3, "case"), (rng.choice(PLACES), "NR", 4, "nmod:prep"),
            ("体验", "VV", 0, "root"), (rng.choice(EXPERIENCES), "NN", 4, "dobj"), ("。", "PU", 4, "punct")]


def conllu(sent_id, toks):
    text = "".join(t[0] for t in toks)
    lines = [f"# sent_id = {sent_id}", f"# text = {text}"]
    for i, (form, tag, head, rel) in enumerate(toks, 1):
        upos, xpos = POS[tag]
        lines.append("\t".join([str(i), form, form, upos, xpos, "_", str(head), rel, "_", "_"]))
    return "\n".join(lines) + "\n\n", text


def main(out):
    os.makedirs(out, exist_ok=True)
    rng = random.Random(20260417)
    # Templates 0/1/2 in proportion 50/30/20 per verb.
    plan = [0] * 50 + [1] * 30 + [2] * 20
    with open(os.path.join(out, "corpus.conllu"), "w", encoding="utf-8") as f:
        n = 0
        for verb in ["解决", "体验"]:
            order = plan[:]
            rng.shuffle(order)
            for t in order:
                n += 1
                block, _ = conllu(f"c{n:03d}", sentence(rng, t, verb))
                f.write(block)

    # Detection data: well-formed uses are correct; a verb given the other
    # verb's object or an object-less frame with a stray aspect marker is an
    # error.
    grng = random.Random(7)
    records, blocks = [], []
    for i in range(60):
        verb = "解决" if i % 2 == 0 else "体验"
        kind = i % 3
        if kind < 2:
            toks = sentence(grng, grng.choice([0, 0, 1, 2]), verb)
            label = "correct"
        else:
            other = EXPERIENCES if verb == "解决" else PROBLEMS
            toks = [(grng.choice(SUBJECTS), "PN", 2, "nsubj"), (verb, "VV", 0, "root"),
                    ("了", "AS", 2, "asp"), ("在", "P", 5, "case"),
                    (grng.choice(other), "NN", 2, "nmod:prep"), ("。", "PU", 2, "punct")]
            label = "error"
        sid = f"g{i + 1:03d}"
        block, text = conllu(sid, toks)
        blocks.append(block)
        begin = text.index(verb)
        records.append({"text": text, "verb": verb, "begin-offset": begin,
                        "end-offset": begin + len(verb), "label": label, "sent_id": sid})
    with open(os.path.join(out, "ged.conllu"), "w", encoding="utf-8") as f:
        f.write("".join(blocks))
    with open(os.path.join(out, "ged.jsonl"), "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")

    sememes = {
        "问题": "problem", "困难": "difficulty,problem", "矛盾": "conflict,problem",
        "纠纷": "conflict", "难题": "difficulty", "争议": "conflict",
        "生活": "life", "文化": "culture", "乐趣": "pleasure", "风情": "culture,custom",
        "感觉": "feeling", "魅力": "attractive",
        "希望": "wish,willing", "想": "think,willing",
    }
    with open(os.path.join(out, "sememes.tsv"), "w", encoding="utf-8") as f:
        for w, s in sememes.items():
            f.write(f"{w}\t{s}\n")
    with open(os.path.join(out, "hypernyms.tsv"), "w", encoding="utf-8") as f:
        f.write("difficulty\tproblem\nconflict\tproblem\nproblem\tsituation\ncustom\tculture\n")
    with open(os.path.join(out, "mine.conf"), "w", encoding="utf-8") as f:
        f.write("# Mining configuration for the bundled fixture corpus.\n"
                "corpus = corpus.conllu\nverbs = 解决, 体验\nseed = 1\n"
                "min_cluster_size = 5\nmin_pts = 3\noutput = fixture.db.json\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures"))
