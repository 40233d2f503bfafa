from .ambient import akey, fmt_atom

DEFAULT_WITNESS_LIMIT = 10


class AxiomResult:
    __slots__ = ("axiom", "witnesses", "count", "notes")

    def __init__(self, axiom, witnesses, count, notes=()):
        self.axiom = axiom
        self.witnesses = witnesses
        self.count = count
        self.notes = tuple(notes)

    @property
    def passed(self):
        return self.count == 0

    @property
    def family(self):
        return self.axiom.split("/", 1)[0]

    def __repr__(self):
        status = "pass" if self.passed else f"fail×{self.count}"
        return f"<{self.axiom} {status}>"


class CheckReport:
    """Per-axiom pass/fail with canonically ordered witnesses.

    Axiom ids are "family/detail"; witnesses are tuples of atoms.
    """

    def __init__(self, subject, limit=DEFAULT_WITNESS_LIMIT):
        self.subject = subject
        self.limit = limit
        self.results = []

    def record(self, axiom, witnesses, notes=()):
        ws = sorted(set(tuple(w) for w in witnesses), key=akey)
        count = len(ws)
        if self.limit is not None:
            ws = ws[: self.limit]
        self.results.append(AxiomResult(axiom, ws, count, notes))
        return count == 0

    def note(self, axiom, notes):
        """An informational entry that always passes."""
        self.results.append(AxiomResult(axiom, [], 0, notes))

    def extend(self, other):
        self.results.extend(other.results)
        return self

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.passed

    def result(self, axiom):
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failed(self):
        return [r for r in self.results if not r.passed]

    def failed_axioms(self):
        return [r.axiom for r in self.failed()]

    def failed_families(self):
        return sorted({r.family for r in self.failed()})

    def witnesses(self, axiom):
        return self.result(axiom).witnesses

    def first_witness(self):
        for r in self.results:
            if not r.passed:
                return r.axiom, r.witnesses[0]
        return None

    def __repr__(self):
        return f"CheckReport({self.subject}, {'pass' if self.passed else 'fail'}: {self.failed_axioms()})"


def fmt_witness(w):
    return " ".join(fmt_atom(a) for a in w)
