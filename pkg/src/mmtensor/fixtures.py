"""Worked examples used by the tests, the CLI and the acceptance suite.

Element ids carry a ``_dot``/``_bar``/``_hat`` suffix giving their position
in the class.  Random generators for the property tests live in :mod:`mmtensor.gen`.
"""
from __future__ import annotations

from .multimatroid import Multimatroid, SkewClass

_MARK = {".": "dot", "-": "bar", "^": "hat"}


def _elem(token: str) -> str:
    return f"{token[:-1]}_{_MARK[token[-1]]}"


def _bases(spec: str) -> list:
    return [[_elem(t) for t in group.split()] for group in spec.split("|")]


def three_class(name: str, ordered: bool = True) -> SkewClass:
    return SkewClass(name, (f"{name}_dot", f"{name}_bar", f"{name}_hat"), ordered)


ZA_BASES = _bases(
    "a. b- c- | a^ b. c- | a. b^ c. | a^ b^ c. | a- b. c- | a^ b. c. | a. b. c^ | a^ b^ c^ |"
    "a. b. c. | a. b^ c- | a. b- c^ | a^ b- c^ | a^ b- c- | a- b^ c- | a- b. c^ | a- b^ c^")

ZB_BASES = _bases(
    "e. f. g. | e. f. g^ | e. f- g- | e. f- g^ | e. f^ g. | e. f^ g- | e- f. g- | e- f. g^ |"
    "e- f- g. | e- f- g^ | e- f^ g. | e- f^ g- | e^ f. g. | e^ f. g- | e^ f- g. | e^ f- g-")


def example_za() -> Multimatroid:
    """Tight 3-matroid on classes a, b, c (all ordered)."""
    return Multimatroid.from_bases([three_class(c) for c in "abc"], ZA_BASES)


def example_zb() -> Multimatroid:
    """Tight 3-matroid on e (ordered), f, g."""
    classes = [three_class("e"), three_class("f", False), three_class("g", False)]
    return Multimatroid.from_bases(classes, ZB_BASES)


def example_z1_tensor_left() -> Multimatroid:
    """2-matroid with classes alpha1, alpha2 used as the left tensor factor."""
    classes = [SkewClass("alpha1", ("alpha11", "alpha12"), True),
               SkewClass("alpha2", ("alpha21", "alpha22"), True)]
    return Multimatroid.from_bases(classes, [["alpha11", "alpha22"], ["alpha12", "alpha21"]])


def example_z2_tensor_right() -> Multimatroid:
    """2-matroid with distinguished class e = {e1 < e2} and classes beta1, beta2."""
    classes = [SkewClass("e", ("e1", "e2"), True),
               SkewClass("beta1", ("beta11", "beta12"), True),
               SkewClass("beta2", ("beta21", "beta22"), True)]
    bases = [["e1", "beta12", "beta22"], ["e2", "beta11", "beta22"], ["e2", "beta12", "beta21"]]
    return Multimatroid.from_bases(classes, bases)
