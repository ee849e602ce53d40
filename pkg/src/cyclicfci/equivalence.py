"""Enumerating small graph families and checking Markov equivalence against DPAGs."""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .acyclify import ancestral_witness_acyclification, canonical_acyclification, sample_acyclification
from .discovery import BackgroundKnowledge, fci, graph_oracle, pc_meek
from .discovery.background import check_jci_assumptions, parse_jci_subset
from .errors import CapExceeded
from .generators import default_names
from .graphs import DMG
from .identify import contains
from .io import dpag_to_document, graph_to_document
from .separation import independence_model

# edge states per unordered pair (i, j): bit 0 is i -> j, bit 1 is j -> i, bit 2 is i <-> j
STATES_FULL = tuple(range(8))
STATES_DIRECTED = (0, 1, 2, 3)

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class GraphFamily:
    """All DMGs on ``n`` labelled nodes meeting some structural constraints.

    With ``jci_context_count`` set, the lowest indices are the context nodes
    and members must satisfy the JCI assumptions in ``jci_subset``.
    """

    n: int
    allow_bidirected: bool = True
    acyclic_only: bool = False
    jci_context_count: int = 0
    jci_subset: frozenset = frozenset({1, 2, 3})

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a family needs at least one node")
        object.__setattr__(self, "jci_subset", parse_jci_subset(self.jci_subset))
        if not 0 <= self.jci_context_count <= self.n:
            raise ValueError("jci_context_count must lie in [0, n]")

    @property
    def names(self):
        return default_names(self.n)

    @property
    def pairs(self):
        return list(combinations(range(self.n), 2))

    @property
    def states(self):
        return STATES_FULL if self.allow_bidirected else STATES_DIRECTED

    @property
    def context_nodes(self):
        return tuple(range(self.jci_context_count))

    @property
    def raw_size(self):
        """Number of edge-state vectors before filtering."""
        return len(self.states) ** len(self.pairs)

    def background(self):
        """The background knowledge this family encodes."""
        if self.jci_context_count:
            return BackgroundKnowledge.jci(self.context_nodes, self.jci_subset)
        if not self.allow_bidirected:
            return BackgroundKnowledge("causal_sufficiency")
        if self.acyclic_only:
            return BackgroundKnowledge("acyclicity")
        return BackgroundKnowledge()

    def decode(self, gid) -> DMG:
        """Graph with id ``gid``: per-pair states in base ``len(states)``, first pair most significant."""
        base = len(self.states)
        digits = []
        for _ in self.pairs:
            gid, r = divmod(gid, base)
            digits.append(self.states[r])
        return self._build(reversed(digits))

    def _build(self, states) -> DMG:
        directed, bidirected = [], []
        for (i, j), s in zip(self.pairs, states):
            if s & 1:
                directed.append((i, j))
            if s & 2:
                directed.append((j, i))
            if s & 4:
                bidirected.append((i, j))
        return DMG(self.names, directed, bidirected)

    def admits(self, G: DMG) -> bool:
        if not self.allow_bidirected and G.bidirected:
            return False
        if self.acyclic_only and not G.is_acyclic():
            return False
        if self.jci_context_count and not check_jci_assumptions(G, self.context_nodes, self.jci_subset):
            return False
        return True


def enumerate_dmgs(family: GraphFamily, cap=DEFAULT_CAP):
    """Yield ``(graph_id, DMG)`` for every family member in id order."""
    if family.raw_size > cap:
        raise CapExceeded(f"{family.raw_size} edge-state vectors exceed the enumeration cap of {cap}; sample instead")
    for gid, states in enumerate(product(family.states, repeat=len(family.pairs))):
        G = family._build(states)
        if family.admits(G):
            yield gid, G


def sample_dmgs(family: GraphFamily, samples, seed=0, max_tries=None):
    """Up to ``samples`` distinct members drawn uniformly by rejection, sorted by id."""
    rng = np.random.default_rng(seed)
    total = family.raw_size
    max_tries = max_tries or 200 * samples
    chosen = {}
    for _ in range(max_tries):
        if len(chosen) >= min(samples, total):
            break
        gid = int(rng.integers(total))
        if gid in chosen:
            continue
        G = family.decode(gid)
        if family.admits(G):
            chosen[gid] = G
    return sorted(chosen.items())


def family_members(family: GraphFamily, samples=None, seed=0, cap=DEFAULT_CAP):
    """Exhaustive enumeration when ``samples`` is None, seeded sampling otherwise."""
    if samples is None:
        return list(enumerate_dmgs(family, cap))
    return sample_dmgs(family, samples, seed)


# -- per-graph analysis (top level so worker processes can pickle it) -------------


def _analyze(args):
    family, gid, crit = args
    G = family.decode(gid)
    im = independence_model(G, crit)
    P = fci(graph_oracle(G, crit)).dpag
    return gid, im.fingerprint(), P.marks.tobytes(), im, P


def _analyze_all(family, members, crit, workers=1):
    jobs = [(family, gid, crit) for gid, _ in members]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_analyze, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_analyze(job) for job in jobs]
    return sorted(results, key=lambda r: r[0])


# -- partitions ------------------------------------------------------------------


@dataclass
class MecPartition:
    """Graph ids grouped by independence model, with one representative DPAG per class."""

    family: GraphFamily
    criterion: str
    classes: list
    representatives: list
    models: list = field(repr=False, default_factory=list)

    def __len__(self):
        return len(self.classes)

    def class_of(self, gid):
        for k, members in enumerate(self.classes):
            if gid in members:
                return k
        raise KeyError(gid)


def _bucket(results):
    """Group analysis results by independence model; buckets by fingerprint, confirmed by equality."""
    buckets = {}
    classes = []
    for r in results:
        gid, fp, _, im, _ = r
        for k in buckets.setdefault(fp, []):
            if classes[k][0][3] == im:
                classes[k].append(r)
                break
        else:
            buckets[fp].append(len(classes))
            classes.append([r])
    return classes


def mec_partition(family: GraphFamily, crit="sigma", samples=None, seed=0, workers=1, members=None, cap=DEFAULT_CAP):
    """Partition the family by independence model under ``crit``."""
    if members is None:
        members = family_members(family, samples, seed, cap)
    results = _analyze_all(family, members, crit, workers)
    classes = _bucket(results)
    return MecPartition(
        family,
        str(crit),
        [[r[0] for r in cls] for cls in classes],
        [cls[0][4] for cls in classes],
        [cls[0][3] for cls in classes],
    )


# -- reports ---------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a verification run; ``counterexamples`` is empty on success."""

    check: str
    family: GraphFamily
    criterion: str
    graphs: int
    classes: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.counterexamples

    def to_dict(self):
        fam = self.family
        return {
            "check": self.check,
            "family": {
                "n": fam.n,
                "allow_bidirected": fam.allow_bidirected,
                "acyclic_only": fam.acyclic_only,
                "jci_context_count": fam.jci_context_count,
                "jci_subset": sorted(fam.jci_subset),
            },
            "criterion": self.criterion,
            "graphs": self.graphs,
            "classes": self.classes,
            "ok": self.ok,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _graph_doc(family, gid):
    G = family.decode(gid)
    return {"id": gid, "graph": graph_to_document(G, family.context_nodes)}


def verify_markov_completeness(family: GraphFamily, crit="sigma", samples=None, seed=0, workers=1, cap=DEFAULT_CAP):
    """Check that equal independence models coincide with equal DPAGs across the family."""
    members = family_members(family, samples, seed, cap)
    results = _analyze_all(family, members, crit, workers)
    classes = _bucket(results)
    bad = []
    # same model, different DPAG
    for cls in classes:
        first = cls[0]
        for r in cls[1:]:
            if r[2] != first[2]:
                bad.append(
                    {
                        "reason": "equal independence models, different DPAGs",
                        "graphs": [_graph_doc(family, first[0]), _graph_doc(family, r[0])],
                        "dpags": [dpag_to_document(first[4]), dpag_to_document(r[4])],
                    }
                )
    # same DPAG, different model
    by_dpag = {}
    for k, cls in enumerate(classes):
        key = cls[0][2]
        if key in by_dpag:
            other = classes[by_dpag[key]][0]
            bad.append(
                {
                    "reason": "equal DPAGs, different independence models",
                    "graphs": [_graph_doc(family, other[0]), _graph_doc(family, cls[0][0])],
                    "dpags": [dpag_to_document(cls[0][4])],
                }
            )
        else:
            by_dpag[key] = k
    return Report("markov_completeness", family, str(crit), len(results), len(classes), bad)


ALGORITHMS = {"fci", "fci_jci", "pc_meek"}


def _run_algorithm(algorithm, G, bk, crit):
    oracle = graph_oracle(G, crit)
    if algorithm == "pc_meek":
        return pc_meek(oracle)
    if algorithm == "fci_jci":
        return fci(oracle, bk=bk)
    return fci(oracle)


def acyclification_clause_failures(G: DMG, bk: BackgroundKnowledge, samples=3, seed=0):
    """Check the three acyclification-compatibility clauses of ``bk`` on ``G``.

    Candidates are the canonical acyclification, ``samples`` seeded ones and
    one ancestral witness per ancestor pair.  Returns failure descriptions.
    """
    candidates = [canonical_acyclification(G).graph]
    candidates += [sample_acyclification(G, seed + s).graph for s in range(samples)]
    admitted = [H for H in candidates if bk.holds(H)]
    failures = []
    if not admitted:
        failures.append("(i) no acyclification satisfies the background knowledge")
    anc = G.anc_matrix
    for i in range(G.n):
        for j in range(G.n):
            if i == j:
                continue
            if anc[i, j]:
                witness = ancestral_witness_acyclification(G, i, j).graph
                pool = [H for H in admitted + [witness] if bk.holds(H)]
                if not any(H.anc_matrix[i, j] for H in pool):
                    failures.append(f"(ii) ancestry {G.names[i]} -> {G.names[j]} lost")
            else:
                if any(H.anc_matrix[i, j] for H in admitted):
                    failures.append(f"(iii) non-ancestry {G.names[i]} -/-> {G.names[j]} broken")
    return failures


def verify_background_soundness(
    family: GraphFamily, algorithm="fci", crit="sigma", samples=None, seed=0, acyclifications=3, cap=DEFAULT_CAP
):
    """Every member satisfying the family's background knowledge is contained in the algorithm's output."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"algorithm must be one of {sorted(ALGORITHMS)}")
    bk = family.background()
    members = family_members(family, samples, seed, cap)
    bad = []
    checked = 0
    for gid, G in members:
        if not bk.holds(G):
            continue
        checked += 1
        P = _run_algorithm(algorithm, G, bk, crit).dpag
        if not contains(P, G):
            bad.append({"reason": "output does not contain graph", **_graph_doc(family, gid), "dpag": dpag_to_document(P)})
        for why in acyclification_clause_failures(G, bk, acyclifications, seed + gid):
            bad.append({"reason": why, **_graph_doc(family, gid)})
    return Report(f"background_soundness[{algorithm}]", family, str(crit), checked, 0, bad)
