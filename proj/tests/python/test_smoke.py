# Copyright 2026 The confreview Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests of the Python bindings."""

import pytest

import confreview


def paper(pid, topics):
    return {
        "id": pid,
        "title": f"Paper {pid}",
        "authors": [{"first_name": "Ada", "last_name": "Contact", "affiliation": "Uni"}],
        "contact": {"name": "Ada", "email": f"p{pid}@example.org", "phone": "", "fax": "",
                    "address": ""},
        "abstract": "Abstract.",
        "topics": topics,
        "status": "full-paper-uploaded",
    }


def reviewer(rid, expertise, willingness=None, coi=()):
    return {"id": rid, "name": rid, "email": f"{rid}@example.org", "expertise": expertise,
            "willingness": willingness or {}, "coi_papers": list(coi)}


def test_expertise_score():
    p = paper(1, [1, 2])
    assert confreview.expertise_score(reviewer("a", {"1": "X", "2": "X"}), p) == 3.0
    assert confreview.expertise_score(reviewer("b", {"1": "X"}), p) == 2.0
    assert confreview.expertise_score(reviewer("c", {"1": "X", "2": "X"}, {"1": "W"}), p) is None


def test_distribution_and_report():
    papers = [paper(1, [1]), paper(2, [1])]
    reviewers = [reviewer("r1", {"1": "X"}), reviewer("r2", {"1": "Y"}),
                 reviewer("r3", {"1": "Z"}, coi=[1])]
    bids = [{"reviewer": "r3", "paper": 2, "priority": "high", "sequence": 1}]
    config = {"reviewers_per_paper": 2, "max_preference_papers": 2, "hard_cap_slack": 1}
    a = confreview.propose_distribution(papers, reviewers, bids, config)
    assert a == confreview.propose_distribution(papers, reviewers, bids, config)
    assert [x["reviewer"] for x in a["papers"]["2"]][0] == "r3"
    assert "r3" not in [x["reviewer"] for x in a["papers"]["1"]]
    report = confreview.distribution_report(a, bids)
    assert report["totals"]["bids_satisfied"] == 1
    assert "Totals:" in confreview.distribution_report(a, bids, text=True)


def test_review_states():
    assert confreview.classification_span("DCBBC") == "BD"
    assert confreview.span_state("AD") == "red"
    assert confreview.span_state("BC") == "orange"


def test_review_form_round_trip():
    review = {"paper": 7, "reviewer": "kim", "classification": "B", "overall_expertise": "Y",
              "comments_for_authors": "---END---\nfine", "comments_for_pc": "hm",
              "submitted_at": 0, "updated_at": 0}
    parsed, errors = confreview.parse_review(confreview.render_filled(review))
    assert errors == []
    assert parsed["comments_for_authors"] == "---END---\nfine"
    assert parsed["classification"] == "B"
    parsed, errors = confreview.parse_review(confreview.render_template(7, "kim"))
    assert parsed is None
    assert "missing classification at line 3" in errors


def test_conference_workflow(tmp_path):
    c = confreview.Conference(str(tmp_path / "store"), kdf_iterations=1000)
    c.configure({"conference_name": "Py", "chair_email": "chair@example.org",
                 "reviewers_per_paper": 2}, [{"id": 1, "name": "Types"}])
    issued = c.import_reviewers([reviewer("r1", {"1": "X"}), reviewer("r2", {"1": "Y"})])
    assert len(issued) == 2
    meta = paper(0, [1])
    for key in ("id", "status"):
        del meta[key]
    result = c.submit_phase1(meta)
    pid = result["id"]
    c.upload_paper(pid, b"%PDF-1.4")
    a = c.propose_distribution()
    c.commit_distribution(a)
    c.submit_review("r1", pid, "A", "X", "good", "PC-ONLY-TEXT")
    assert c.paper_state(pid, "r1") == "pink"
    assert c.paper_state(pid, "r2") == "white"
    c.submit_review("r2", pid, "D", "Y", "bad", "")
    assert c.paper_state(pid) == "red"
    with pytest.raises(confreview.Error):
        c.paper_state(pid, "nobody")
    assert c.overview("all")["rows"][0]["state"] == "red"
    c.record_decisions([pid])
    mails = c.generate_notifications()
    assert len(mails) == 1
    assert "PC-ONLY-TEXT" not in mails[0]["body"]
    assert "PC-ONLY-TEXT" not in c.read_blob("outbox/" + mails[0]["file_name"]).decode()
    assert c.paper_state(pid) == "gold"
    # Reopening the store replays the same version.
    assert confreview.Conference(str(tmp_path / "store"), kdf_iterations=1000).version == c.version
