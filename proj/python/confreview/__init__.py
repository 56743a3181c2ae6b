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
"""Python bindings for the confreview core.

Records are plain dicts with the same field names as the JSON documents of
the store (see docs/schemas.md).
"""

import json

from . import _core
from ._core import Error, classification_span, render_template, span_state

__all__ = [
    "Conference",
    "Error",
    "classification_span",
    "distribution_report",
    "expertise_score",
    "parse_review",
    "propose_distribution",
    "render_filled",
    "render_template",
    "span_state",
]


def expertise_score(reviewer, paper):
    """Mean of X=3, Y=2, Z=1 over the paper's topics, or None if excluded."""
    return _core.expertise_score(json.dumps(reviewer), json.dumps(paper))


def propose_distribution(papers, reviewers, bids=(), config=None):
    payload = {"papers": list(papers), "reviewers": list(reviewers), "bids": list(bids)}
    if config is not None:
        payload["config"] = config
    return json.loads(_core.propose_distribution(json.dumps(payload)))


def distribution_report(assignment, bids=(), text=False):
    out = _core.distribution_report(json.dumps(assignment), json.dumps(list(bids)), text)
    return out if text else json.loads(out)


def render_filled(review):
    return _core.render_filled(json.dumps(review))


def parse_review(text):
    """Returns (review dict or None, list of error strings)."""
    review, errors = _core.parse_review(text)
    return (json.loads(review) if review is not None else None), list(errors)


class Conference:
    """A store plus the review workflow, acting as the local maintainer.

    An empty root keeps everything in memory.
    """

    def __init__(self, root="", kdf_iterations=100000):
        self._c = _core.Conference(str(root), kdf_iterations)

    @property
    def version(self):
        return self._c.version

    def configure(self, config, topics=None):
        self._c.configure(json.dumps(config), json.dumps(topics) if topics is not None else "")

    def import_reviewers(self, profiles):
        return json.loads(self._c.import_reviewers(json.dumps(list(profiles))))

    def submit_phase1(self, metadata):
        return json.loads(self._c.submit_phase1(json.dumps(metadata)))

    def upload_paper(self, paper, data, filename="paper.pdf"):
        return json.loads(self._c.upload_paper(paper, bytes(data), filename))

    def submit_bids(self, reviewer, selections):
        return json.loads(self._c.submit_bids(reviewer, json.dumps(list(selections))))

    def declare_coi(self, reviewer, paper):
        return json.loads(self._c.declare_coi(reviewer, paper))

    def propose_distribution(self):
        return json.loads(self._c.propose_distribution())

    def commit_distribution(self, assignment):
        self._c.commit_distribution(json.dumps(assignment))

    def submit_review(self, reviewer, paper, classification, expertise,
                      comments_for_authors="", comments_for_pc=""):
        return json.loads(self._c.submit_review(reviewer, paper, classification, expertise,
                                                comments_for_authors, comments_for_pc))

    def paper_state(self, paper, viewer=None):
        return self._c.paper_state(paper, viewer)

    def record_decisions(self, accepted):
        return json.loads(self._c.record_decisions(list(accepted)))

    def generate_notifications(self):
        return json.loads(self._c.generate_notifications())

    def overview(self, name):
        return json.loads(self._c.overview(name))

    def read_blob(self, path):
        return self._c.read_blob(path)
