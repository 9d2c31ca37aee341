"""Parsers and ingestion: DNF text, read-once gate formulas, and
(hyper)graph properties, each compiled to a truth table with validity
checks.

Text conventions, fixed and bit-exact:
  DNF        terms separated by '|', literals joined by '&', a literal
             is x<digits> or !x<digits>, optional parentheses and
             whitespace: "(x1 & x2) | (x3 & !x4)".
  read-once  gate grammar AND(...)/OR(...)/MAJ(...)/EXACT<j>(...),
             leaves x<i> or !x<i>: "OR(AND(x1,x2),AND(x3,x4))".
Variables are 1-indexed in text and 0-indexed internally.  Hypergraph
edge variables are ordered lexicographically on sorted vertex tuples;
this encoding is the package's own choice and is documented here
because nothing upstream fixes one.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from .truthtable import TruthTable, from_function, to_hex

TABLE_CAP = 16


class FormulaError(ValueError):
    """Parse or validation failure; carries a character position when
    the failure is syntactic."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class PropertyError(ValueError):
    pass


# -- DNF formulas -------------------------------------------------------


@dataclass(frozen=True)
class DnfFormula:
    """OR of ANDs of literals.

    terms is a tuple of terms; a term is a tuple of (variable, negated)
    pairs sorted by variable index.  No term repeats a variable, no two
    terms are identical, and every term has at least one literal.
    """

    n: int
    terms: tuple

    def __post_init__(self):
        seen_terms = set()
        for t, term in enumerate(self.terms):
            if not term:
                raise FormulaError("term %d is empty" % (t + 1))
            vars_seen = set()
            for var, neg in term:
                if not 0 <= var < self.n:
                    raise FormulaError(
                        "term %d references variable %d outside arity %d"
                        % (t + 1, var + 1, self.n)
                    )
                if var in vars_seen:
                    raise FormulaError(
                        "term %d repeats variable x%d" % (t + 1, var + 1)
                    )
                vars_seen.add(var)
                if neg not in (False, True):
                    raise FormulaError("bad polarity %r" % (neg,))
            if tuple(term) != tuple(sorted(term, key=lambda l: l[0])):
                raise FormulaError("term %d literals not sorted" % (t + 1))
            if term in seen_terms:
                raise FormulaError("duplicate term %d" % (t + 1))
            seen_terms.add(term)

    @property
    def alpha(self) -> int:
        """Term count (the size of the formula)."""
        return len(self.terms)

    @property
    def beta(self) -> int:
        """Maximum term width."""
        return max(len(t) for t in self.terms)

    @property
    def read_k(self) -> int:
        """Maximum number of terms any one variable occurs in."""
        counts = {}
        for term in self.terms:
            for var, _ in term:
                counts[var] = counts.get(var, 0) + 1
        return max(counts.values())

    def occurrences(self):
        """variable -> number of terms containing it."""
        counts = {}
        for term in self.terms:
            for var, _ in term:
                counts[var] = counts.get(var, 0) + 1
        return counts

    def term_satisfied(self, t: int, x: int) -> bool:
        return all(((x >> var) & 1) != neg for var, neg in self.terms[t])

    def evaluate(self, x: int) -> int:
        for t in range(len(self.terms)):
            if self.term_satisfied(t, x):
                return 1
        return 0

    def table(self) -> TruthTable:
        if self.n > TABLE_CAP:
            raise FormulaError(
                "arity %d exceeds the table cap %d" % (self.n, TABLE_CAP)
            )
        return from_function(self.n, self.evaluate)

    def to_text(self) -> str:
        parts = []
        for term in self.terms:
            lits = " & ".join(
                ("!x%d" if neg else "x%d") % (var + 1) for var, neg in term
            )
            parts.append("(%s)" % lits)
        return " | ".join(parts)


def parse_dnf(text: str) -> DnfFormula:
    """Parse the DNF grammar; n is the largest referenced index."""
    scanner = _Scanner(text)
    terms = []
    while True:
        terms.append(_parse_term(scanner))
        if not scanner.take("|"):
            break
    scanner.expect_end()
    n = max(var for term in terms for var, _ in term) + 1
    return DnfFormula(n, tuple(terms))


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            raise FormulaError("expected %r" % ch, self.pos)

    def expect_end(self):
        self.skip_ws()
        if self.pos < len(self.text):
            raise FormulaError(
                "unexpected %r" % self.text[self.pos], self.pos
            )

    def word(self):
        """Longest run of letters at the cursor (empty if none)."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def number(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise FormulaError("expected digits", start)
        return int(self.text[start:self.pos])


def _parse_literal(scanner):
    neg = scanner.take("!")
    scanner.skip_ws()
    if scanner.peek() != "x":
        raise FormulaError("expected a literal", scanner.pos)
    scanner.pos += 1
    idx = scanner.number()
    if idx < 1:
        raise FormulaError("variable indices start at 1", scanner.pos)
    return idx - 1, neg


def _parse_term(scanner):
    if scanner.take("("):
        inner = _parse_term(scanner)
        scanner.expect(")")
        return inner
    lits = [_parse_literal(scanner)]
    while scanner.take("&"):
        lits.append(_parse_literal(scanner))
    term = tuple(sorted(lits, key=lambda l: l[0]))
    seen = set()
    for var, _ in term:
        if var in seen:
            raise FormulaError(
                "variable x%d repeated within a term" % (var + 1), scanner.pos
            )
        seen.add(var)
    return term


@dataclass(frozen=True)
class DnfReport:
    """Stats plus the irredundancy report for a DNF.

    minimal means irredundant: no whole term and no single literal can
    be dropped without changing the function.  This is the weakest
    minimality notion that the downstream embedding lemmas need, and it
    is the one this flag certifies; a stricter minimum-size notion
    would need a search this report does not attempt.
    """

    alpha: int
    beta: int
    read_k: int
    minimal: bool
    removable_terms: tuple  # 0-based term indices
    removable_literals: tuple  # (term index, variable) pairs

    def to_json(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "read_k": self.read_k,
            "minimal": self.minimal,
            "removable_terms": [t + 1 for t in self.removable_terms],
            "removable_literals": [
                [t + 1, v + 1] for t, v in self.removable_literals
            ],
        }


def dnf_analyze(dnf: DnfFormula, requested_k=None):
    """(DnfReport, TruthTable) with the read-k check applied.

    Non-minimal formulas are reported, not rejected; a read-k violation
    against requested_k is an error naming the offending variables.
    """
    if requested_k is not None and dnf.read_k > requested_k:
        offending = sorted(
            var for var, c in dnf.occurrences().items() if c > requested_k
        )
        raise FormulaError(
            "not read-%d: variable(s) %s occur too often"
            % (requested_k, ", ".join("x%d" % (v + 1) for v in offending))
        )
    table = dnf.table()
    removable_terms = []
    for t in range(dnf.alpha):
        if dnf.alpha == 1:
            break
        rest = DnfFormula(
            dnf.n, tuple(term for i, term in enumerate(dnf.terms) if i != t)
        )
        if rest.table().mask == table.mask:
            removable_terms.append(t)
    removable_literals = []
    for t, term in enumerate(dnf.terms):
        if len(term) < 2:
            continue
        for drop in range(len(term)):
            shrunk = list(dnf.terms)
            shrunk[t] = term[:drop] + term[drop + 1:]
            try:
                cand = DnfFormula(dnf.n, tuple(shrunk))
            except FormulaError:
                continue  # shrinking collided with an existing term
            if cand.table().mask == table.mask:
                removable_literals.append((t, term[drop][0]))
    report = DnfReport(
        alpha=dnf.alpha,
        beta=dnf.beta,
        read_k=dnf.read_k,
        minimal=not removable_terms and not removable_literals,
        removable_terms=tuple(removable_terms),
        removable_literals=tuple(removable_literals),
    )
    return report, table


# -- read-once formulas -------------------------------------------------

GATE_AND = "AND"
GATE_OR = "OR"
GATE_MAJ = "MAJ"
GATE_EXACT = "EXACT"


@dataclass(frozen=True)
class GateNode:
    kind: str
    j: int  # EXACT target weight; unused otherwise
    children: tuple

    @property
    def fanin(self):
        return len(self.children)


@dataclass(frozen=True)
class LeafNode:
    var: int
    neg: bool


def gate_value(kind, j, bits):
    w = sum(bits)
    if kind == GATE_AND:
        return int(w == len(bits))
    if kind == GATE_OR:
        return int(w > 0)
    if kind == GATE_MAJ:
        return int(2 * w > len(bits))
    if kind == GATE_EXACT:
        return int(w == j)
    raise FormulaError("unknown gate %r" % kind)


def gate_table(kind, j, w) -> TruthTable:
    """The gate as a symmetric truth table on w inputs."""
    return from_function(
        w, lambda x: gate_value(kind, j, [(x >> i) & 1 for i in range(w)])
    )


@dataclass(frozen=True)
class ReadOnceFormula:
    """Gate tree where every variable occurs exactly once.

    depth counts gate levels (a bare literal is depth 0, one gate over
    literals is depth 1); w is the maximum fan-in.
    """

    root: object
    n: int
    depth: int
    max_fanin: int
    variables: tuple

    def evaluate(self, x: int) -> int:
        def walk(node):
            if isinstance(node, LeafNode):
                return ((x >> node.var) & 1) ^ int(node.neg)
            return gate_value(
                node.kind, node.j, [walk(c) for c in node.children]
            )

        return walk(self.root)

    def table(self) -> TruthTable:
        if self.n > TABLE_CAP:
            raise FormulaError(
                "arity %d exceeds the table cap %d" % (self.n, TABLE_CAP)
            )
        return from_function(self.n, self.evaluate)

    def to_text(self) -> str:
        def walk(node):
            if isinstance(node, LeafNode):
                return ("!x%d" if node.neg else "x%d") % (node.var + 1)
            name = node.kind
            if node.kind == GATE_EXACT:
                name = "EXACT%d" % node.j
            return "%s(%s)" % (name, ",".join(walk(c) for c in node.children))

        return walk(self.root)


def parse_read_once(text: str) -> ReadOnceFormula:
    scanner = _Scanner(text)
    root = _parse_ro_node(scanner)
    scanner.expect_end()
    seen = []

    def stats(node):
        if isinstance(node, LeafNode):
            return 0, 0
        best_d = 0
        best_w = node.fanin
        for c in node.children:
            d, w = stats(c)
            best_d = max(best_d, d)
            best_w = max(best_w, w)
        return best_d + 1, best_w

    def vars_of(node):
        if isinstance(node, LeafNode):
            seen.append(node.var)
        else:
            for c in node.children:
                vars_of(c)

    vars_of(root)
    dupes = sorted({v for v in seen if seen.count(v) > 1})
    if dupes:
        raise FormulaError(
            "not read-once: variable(s) %s repeat"
            % ", ".join("x%d" % (v + 1) for v in dupes)
        )
    depth, fanin = stats(root)
    return ReadOnceFormula(
        root=root,
        n=max(seen) + 1,
        depth=depth,
        max_fanin=fanin,
        variables=tuple(sorted(seen)),
    )


def _parse_ro_node(scanner):
    scanner.skip_ws()
    word = scanner.word()
    if word in ("", "x"):
        # a literal: rewind the consumed 'x' if any and reparse
        scanner.pos -= len(word)
        var, neg = _parse_literal(scanner)
        return LeafNode(var, neg)
    if word == GATE_EXACT:
        j = scanner.number()
    elif word in (GATE_AND, GATE_OR, GATE_MAJ):
        j = 0
    else:
        raise FormulaError("unknown gate %r" % word, scanner.pos)
    scanner.expect("(")
    children = [_parse_ro_node(scanner)]
    while scanner.take(","):
        children.append(_parse_ro_node(scanner))
    scanner.expect(")")
    if word == GATE_EXACT and j > len(children):
        raise FormulaError(
            "EXACT%d exceeds fan-in %d (constant gate)" % (j, len(children)),
            scanner.pos,
        )
    return GateNode(kind=word, j=j, children=tuple(children))


def ro_to_table(formula: ReadOnceFormula) -> TruthTable:
    return formula.table()


# -- hypergraph properties ----------------------------------------------


def edge_variables(n: int, k: int):
    """All k-subsets of [n] in lexicographic order; index = variable."""
    return [tuple(c) for c in combinations(range(n), k)]


def edges_of_mask(mask: int, edge_list):
    return frozenset(
        edge_list[i] for i in range(len(edge_list)) if (mask >> i) & 1
    )


def _permuted_mask(mask, edge_list, edge_index, perm):
    out = 0
    for i in range(len(edge_list)):
        if (mask >> i) & 1:
            image = tuple(sorted(perm[v] for v in edge_list[i]))
            out |= 1 << edge_index[image]
    return out


@dataclass(frozen=True)
class PropertySpec:
    """A k-uniform hypergraph property on n vertices.

    The table lives on binom(n, k) edge variables in lexicographic
    order.  status is "verified" once invariance under every vertex
    permutation has been established.
    """

    k: int
    n: int
    edge_list: tuple
    table: TruthTable
    status: str
    name: str = ""
    predicate: object = None

    def evaluate_edges(self, edges) -> int:
        idx = {e: i for i, e in enumerate(self.edge_list)}
        mask = 0
        for e in edges:
            mask |= 1 << idx[tuple(sorted(e))]
        return self.table.value(mask)

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "edge_variables": [list(e) for e in self.edge_list],
            "table_hex": to_hex(self.table),
            "status": self.status,
            "name": self.name,
        }


def _invariance_generators(n):
    """A transposition and a full cycle generate the symmetric group."""
    gens = []
    if n >= 2:
        swap = list(range(n))
        swap[0], swap[1] = swap[1], swap[0]
        gens.append(tuple(swap))
        gens.append(tuple(list(range(1, n)) + [0]))
    return gens


def property_from_predicate(k, n, predicate, name="") -> PropertySpec:
    """Materialize a predicate over hypergraphs as a PropertySpec.

    predicate(n, edges) gets a frozenset of sorted k-tuples and must be
    total.  Invariance under all n! vertex permutations is established
    through closure under a generating pair of permutations; a
    violation raises PropertyError with a counterexample pair.
    """
    if k < 1 or n < 1:
        raise PropertyError("need k >= 1 and n >= 1")
    edge_list = edge_variables(n, k)
    nvars = len(edge_list)
    if nvars > TABLE_CAP:
        raise PropertyError(
            "binom(%d, %d) = %d edge variables exceed the cap %d"
            % (n, k, nvars, TABLE_CAP)
        )
    edge_index = {e: i for i, e in enumerate(edge_list)}
    mask_table = 0
    for m in range(1 << nvars):
        if predicate(n, edges_of_mask(m, edge_list)):
            mask_table |= 1 << m
    table = TruthTable(nvars, mask_table)
    _require_invariance(table, edge_list, edge_index, n)
    return PropertySpec(
        k=k,
        n=n,
        edge_list=tuple(edge_list),
        table=table,
        status="verified",
        name=name,
        predicate=predicate,
    )


def _require_invariance(table, edge_list, edge_index, n):
    """Raise unless the table is closed under a generating permutation
    pair, which settles invariance under the whole symmetric group."""
    for perm in _invariance_generators(n):
        for m in range(table.size):
            m2 = _permuted_mask(m, edge_list, edge_index, perm)
            if table.value(m) != table.value(m2):
                raise PropertyError(
                    "not isomorphism-invariant: value differs between "
                    "%s and %s under vertex permutation %s"
                    % (
                        sorted(edges_of_mask(m, edge_list)),
                        sorted(edges_of_mask(m2, edge_list)),
                        list(perm),
                    )
                )


def property_from_table(k, n, table, name="") -> PropertySpec:
    """Wrap an explicit truth table over the binom(n, k) edge variables.

    The table's inputs must follow the lexicographic edge order of
    edge_variables(n, k).  Invariance is checked the same way as for
    predicates, so a verified spec comes back or PropertyError names a
    violating pair of edge sets.
    """
    if k < 1 or n < 1:
        raise PropertyError("need k >= 1 and n >= 1")
    edge_list = edge_variables(n, k)
    if table.n != len(edge_list):
        raise PropertyError(
            "table has %d inputs but binom(%d, %d) = %d edge variables"
            % (table.n, n, k, len(edge_list))
        )
    edge_index = {e: i for i, e in enumerate(edge_list)}
    _require_invariance(table, edge_list, edge_index, n)
    return PropertySpec(
        k=k,
        n=n,
        edge_list=tuple(edge_list),
        table=table,
        status="verified",
        name=name,
    )


def property_invariant_under(spec: PropertySpec, perm) -> bool:
    """Direct check of one permutation (used by the literal route)."""
    edge_index = {e: i for i, e in enumerate(spec.edge_list)}
    for m in range(spec.table.size):
        m2 = _permuted_mask(m, spec.edge_list, edge_index, tuple(perm))
        if spec.table.value(m) != spec.table.value(m2):
            return False
    return True


def property_invariant_all(spec: PropertySpec) -> bool:
    """Literal all-permutations route; practical only for small n."""
    return all(
        property_invariant_under(spec, perm)
        for perm in permutations(range(spec.n))
    )


# -- named property built-ins ------------------------------------------


def _has_edge(n, edges):
    return len(edges) >= 1


def _has_triangle(n, edges):
    verts = sorted({v for e in edges for v in e})
    for a, b, c in combinations(verts, 3):
        if (a, b) in edges and (a, c) in edges and (b, c) in edges:
            return True
    return False


def _two_disjoint_edges(n, edges):
    es = list(edges)
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if not set(es[i]) & set(es[j]):
                return True
    return False


def _exactly_one_edge(n, edges):
    return len(edges) == 1


BUILTIN_PROPERTIES = {
    "one-edge": (2, _has_edge),
    "triangle": (2, _has_triangle),
    "two-disjoint-edges": (2, _two_disjoint_edges),
    "exactly-one-edge": (2, _exactly_one_edge),
}


def builtin_property(name, n, k=None) -> PropertySpec:
    if name not in BUILTIN_PROPERTIES:
        raise PropertyError(
            "unknown property %r (known: %s)"
            % (name, ", ".join(sorted(BUILTIN_PROPERTIES)))
        )
    default_k, pred = BUILTIN_PROPERTIES[name]
    return property_from_predicate(k or default_k, n, pred, name=name)
