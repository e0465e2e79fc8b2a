"""Regenerate the group and ring fixtures from the model builders."""
from __future__ import annotations

import argparse
from pathlib import Path

from normkit.dsl import ModelDecl, PrenormDecl, TheoryDecl, TheoryDocument, print_document
from normkit.examples import (
    build_cyclic_group_model,
    build_cyclic_ring_model,
    build_norm_target,
    build_truncated_semiring_model,
)


def document(header, sig_name, decls, prenorms=()):
    doc = TheoryDocument()
    for model_name, theory_name, model in decls:
        doc.signatures.setdefault(sig_name, model.signature)
        doc.theories.setdefault(theory_name, TheoryDecl(theory_name, sig_name, model.theory))
        doc.models[model_name] = ModelDecl(model_name, theory_name, model.structure)
    for name, src, trg, phi in prenorms:
        doc.prenorms[name] = PrenormDecl(name, src, trg, None, tuple(phi))
    return header + print_document(doc)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "fixtures", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    group = document(
        "# Z3 as a group into N2 with u read as the identity.\n",
        "grp",
        [("Z3", "T_grp", build_cyclic_group_model(3)),
         ("N2u", "T_order", build_norm_target(2, "grp"))],
        [("Abs", "Z3", "N2u", [(0, 0), (1, 1), (2, 1)]),
         ("Lopsided", "Z3", "N2u", [(0, 0), (1, 1), (2, 2)])],
    )
    ring = document(
        "# Z2 and the saturating N2 as unital semirings.\n",
        "rig",
        [("Z2", "T_rig", build_cyclic_ring_model(2, theory="rig")),
         ("N2", "T_rig", build_truncated_semiring_model(2))],
        [("Ind", "Z2", "N2", [(0, 0), (1, 1)]),
         ("Twice", "Z2", "N2", [(0, 0), (1, 2)])],
    )
    (args.out / "group.nk").write_text(group)
    (args.out / "ring.nk").write_text(ring)


if __name__ == "__main__":
    main()
