#!/usr/bin/env python3
"""Record real /v1 payloads into frontend/tests/fixtures/.

The frontend snapshot tests replay these; regenerate after payload changes.
"""

import json
from pathlib import Path
import sys

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from draftcoach import discourse  # noqa: E402
from draftcoach.pipeline import AnalysisEngine  # noqa: E402
from draftcoach.server import create_app  # noqa: E402
from draftcoach.session import ProjectStore  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "fixtures"

FIG2_TEXT = (
    "Compare the past eight five-year plans with actual appropriations. "
    "The Pentagon's strategists produce budgets that simply cannot be executed "
    "because they assume a defense strategy depends only on goals and threats. "
    "Strategy, however, is about possibilities, not hopes and dreams."
)

FIG2_EDU_TEXTS = [
    "Compare the past eight five-year plans with actual appropriations.",
    "The Pentagon's strategists produce budgets",
    "that simply cannot be executed",
    "because they assume",
    "a defense strategy depends only on goals and threats.",
    "Strategy, however, is about possibilities, not hopes and dreams.",
]

FIG2_GOLD = (
    "(elaboration NS 1 (contrast NN (elaboration NS 2 "
    "(explanation NS 3 (attribution NS 4 5))) 6))"
)


def write(name: str, payload: dict) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"wrote frontend/tests/fixtures/{name}")


def fig2_gold_payload() -> dict:
    """Service-schema rst payload for the gold six-EDU tree."""
    edus = [
        discourse.Edu(id=i + 1, text=t, sentence_index=i, token_span=(0, 1))
        for i, t in enumerate(FIG2_EDU_TEXTS)
    ]
    tree = discourse.replay(edus, discourse.oracle_actions(discourse.parse_gold_tree(FIG2_GOLD)))
    counts = discourse.relation_counts(tree)
    return {
        "scope": "full",
        "tree": discourse.tree_to_dict(tree, edus),
        "relation_counts": dict(sorted(counts.items())),
        "paragraph_relation_counts": [dict(sorted(counts.items()))],
        "satellite_spans": {
            rel: [list(s) for s in discourse.satellite_spans(tree, rel)]
            for rel in sorted(counts)
        },
    }


def main() -> None:
    import tempfile

    intro = (ROOT / "tests" / "fixtures" / "intro.txt").read_text(encoding="utf-8")
    draft = (ROOT / "tests" / "fixtures" / "draft.txt").read_text(encoding="utf-8")
    reference = (
        "Fixed signal plans age badly as traffic shifts. We test a learned policy under "
        "standard controller constraints. A shield keeps every timing rule satisfied. "
        "Field delay fell nine percent with no violations."
    )

    with tempfile.TemporaryDirectory() as tmp:
        store = ProjectStore(tmp, engine=AnalysisEngine.default())
        client = TestClient(create_app(store))

        pid = client.post(
            "/v1/projects", json={"source_text": intro, "reference_abstract": reference}
        ).json()["project_id"]

        client.post(f"/v1/projects/{pid}/drafts", json={"text": draft})
        analysis = client.post(f"/v1/projects/{pid}/drafts/1/analyze").json()
        write("analysis.json", analysis)

        shorter = " ".join(draft.split(". ")[:3]) + "."
        client.post(f"/v1/projects/{pid}/drafts", json={"text": shorter})
        client.post(f"/v1/projects/{pid}/drafts/2/analyze")
        client.post(f"/v1/projects/{pid}/drafts/1/analyze")
        write("history.json", client.get(f"/v1/projects/{pid}/history").json())

        write(
            "reference_k3.json",
            client.get(f"/v1/projects/{pid}/reference", params={"k": 3}).json(),
        )
        write(
            "reference_k1.json",
            client.get(f"/v1/projects/{pid}/reference", params={"k": 1}).json(),
        )
        write("prompt.json", client.post(f"/v1/projects/{pid}/prompt", json={}).json())

        fig2_pid = client.post("/v1/projects", json={"source_text": FIG2_TEXT}).json()[
            "project_id"
        ]
        write("rst_fig2_server.json", client.get(f"/v1/projects/{fig2_pid}/rst").json())

    write("rst_fig2_gold.json", fig2_gold_payload())


if __name__ == "__main__":
    main()
