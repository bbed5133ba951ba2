"""
Group Structure Service

Builds multiplier subgroups, realizes the splitting map alpha -> (B_alpha, 0)
and certifies, by exhaustive enumeration over a finite torsion model, that
the preimage of a multiplier subgroup is the semidirect product of the
translation subgroup with the image of the splitting map.

The full group is infinite (the translations form a torus and every
generalized multiplier has infinite order). Certification therefore runs on
finite models: translations restricted to (1/q)Z^n mod Z^n, matrices
restricted to words of bounded length. Integer matrices preserve
(1/q)Z^n, so these models are genuine subsets of the group; products whose
matrix leaves the word ball are outside the model by construction and are
skipped, while a product whose matrix stays in the ball must land in the
model or NotClosedError is raised.
"""

import itertools
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import get_settings
from src.models.flow import AffineLift, FrequencyVector, IntMatrix, Multiplier
from src.models.group import (
    MultiplierSubgroup,
    StructureCertificate,
    TorsionModel,
    WordEntry,
)
from src.models.number_field import AlgebraicNumber
from src.services.symmetry_service import (
    SymmetryError,
    SymmetryService,
    compose,
    invert,
)


logger = logging.getLogger(__name__)


class GroupStructureError(Exception):
    """Base exception for group structure errors."""


class ModelTooLargeError(GroupStructureError):
    """Raised when a torsion model would exceed the configured element cap."""


class NotClosedError(GroupStructureError):
    """Raised when a product inside the word ball escapes the model."""


class InvalidModelParametersError(GroupStructureError):
    """Raised when q or the word length bound is out of range."""


class GroupStructureService:
    """
    Service for subgroup construction and semidirect-product certification.
    """

    def __init__(
        self,
        flow: FrequencyVector,
        element_cap: Optional[int] = None,
        symmetry_service: Optional[SymmetryService] = None
    ):
        """
        Initialize the group structure service.

        Args:
            flow: A validated FrequencyVector
            element_cap: Maximum model size (default: settings.element_cap)
            symmetry_service: Shared SymmetryService for the same flow
        """
        self.flow = flow
        self.symmetry = symmetry_service or SymmetryService(flow)
        self.element_cap = element_cap if element_cap is not None else get_settings().element_cap
        self._splitting_cache: Dict[AlgebraicNumber, AffineLift] = {}

    # ------------------------------------------------------------------
    # Subgroups and the splitting map
    # ------------------------------------------------------------------

    def subgroup(self, generators: Sequence[AlgebraicNumber]) -> MultiplierSubgroup:
        """
        Build the subgroup generated by the given multipliers.

        Raises:
            NoIntegerSolutionError: If a generator is not a multiplier of the flow
            NotUnimodularError: If a generator is not a unit
        """
        multipliers = tuple(
            Multiplier(value=alpha, witness=self.symmetry.matrix_from_multiplier(alpha))
            for alpha in generators
        )
        return MultiplierSubgroup(flow=self.flow, generators=multipliers)

    def reversing_group(self) -> MultiplierSubgroup:
        """The subgroup {1, -1}, generated by -1 with witness -I."""
        minus_one = AlgebraicNumber.from_rational(self.flow.field, -1)
        return MultiplierSubgroup(
            flow=self.flow,
            generators=(Multiplier(value=minus_one, witness=IntMatrix.scalar(self.flow.n, -1)),),
        )

    def splitting_map(
        self,
        alpha: AlgebraicNumber,
        subgroup: Optional[MultiplierSubgroup] = None
    ) -> AffineLift:
        """
        Zero-translation lift realizing a multiplier.

        Args:
            alpha: A multiplier of the flow
            subgroup: Subgroup alpha is taken from (must belong to this flow)

        Returns:
            The lift (B_alpha, 0)

        Raises:
            NoIntegerSolutionError: If alpha is not a multiplier
            NotUnimodularError: If alpha is not a unit
        """
        if subgroup is not None and subgroup.flow != self.flow:
            raise GroupStructureError("Subgroup belongs to a different flow")
        cached = self._splitting_cache.get(alpha)
        if cached is None:
            matrix = self.symmetry.matrix_from_multiplier(alpha)
            zero = AlgebraicNumber.zero(self.flow.field)
            cached = AffineLift(matrix, (zero,) * self.flow.n)
            self._splitting_cache[alpha] = cached
        return cached

    # ------------------------------------------------------------------
    # Words
    # ------------------------------------------------------------------

    def _letters(self, subgroup: MultiplierSubgroup) -> List[Tuple[Tuple[int, int], IntMatrix, AlgebraicNumber]]:
        letters = [
            ((i, 1), g.witness, g.value) for i, g in enumerate(subgroup.generators)
        ]
        letters += [
            ((i, -1), g.witness.inverse(), g.value.inverse())
            for i, g in enumerate(subgroup.generators)
        ]
        return letters

    def enumerate_words(
        self,
        subgroup: MultiplierSubgroup,
        word_length_bound: int
    ) -> Dict[IntMatrix, WordEntry]:
        """
        Breadth-first enumeration of the word ball.

        Words are extended by generators first, then inverses, in generator
        order; each matrix keeps the first (shortest) word reaching it.

        Args:
            subgroup: Multiplier subgroup
            word_length_bound: Maximum word length (>= 0)

        Returns:
            Ordered mapping matrix -> WordEntry, identity first
        """
        if word_length_bound < 0:
            raise InvalidModelParametersError("word_length_bound must be >= 0")
        n = self.flow.n
        identity = IntMatrix.identity(n)
        words: Dict[IntMatrix, WordEntry] = {
            identity: WordEntry(identity, AlgebraicNumber.one(self.flow.field), ())
        }
        letters = self._letters(subgroup)
        frontier = [words[identity]]
        for _ in range(word_length_bound):
            next_frontier = []
            for entry in frontier:
                for letter, matrix, alpha in letters:
                    product = entry.matrix @ matrix
                    if product in words:
                        continue
                    extended = WordEntry(product, entry.alpha * alpha, entry.word + (letter,))
                    words[product] = extended
                    next_frontier.append(extended)
            frontier = next_frontier
        logger.debug(
            "Word ball of %s up to length %d has %d matrices",
            subgroup.describe(), word_length_bound, len(words)
        )
        return words

    def verify_splitting(self, subgroup: MultiplierSubgroup, word_length_bound: int) -> bool:
        """
        Check that the splitting map is a homomorphism section on the word ball.

        For every word w, h(alpha_w) must have multiplier alpha_w; for every
        pair of words, h(alpha_w) o h(alpha_v) must equal h(alpha_w alpha_v).

        Args:
            subgroup: Multiplier subgroup
            word_length_bound: Maximum word length (>= 1)

        Returns:
            True iff every check passes
        """
        if word_length_bound < 1:
            raise InvalidModelParametersError("word_length_bound must be >= 1")
        entries = list(self.enumerate_words(subgroup, word_length_bound).values())
        try:
            lifts = [self.splitting_map(entry.alpha) for entry in entries]
            for entry, lift in zip(entries, lifts):
                if lift.matrix != entry.matrix:
                    logger.info("Splitting map disagrees with word %s", entry.word)
                    return False
                if self.symmetry.multiplier_of(lift).value != entry.alpha:
                    return False
            for (e1, h1), (e2, h2) in itertools.product(zip(entries, lifts), repeat=2):
                if compose(h1, h2) != self.splitting_map(e1.alpha * e2.alpha):
                    logger.info("Splitting map fails on words %s and %s", e1.word, e2.word)
                    return False
        except SymmetryError as e:
            logger.info("Splitting map undefined on the word ball: %s", e)
            return False
        return True

    # ------------------------------------------------------------------
    # Torsion models
    # ------------------------------------------------------------------

    def torsion_translations(self, q: int) -> List[AffineLift]:
        """All translations by (1/q)Z^n mod Z^n in lexicographic order."""
        field = self.flow.field
        identity = IntMatrix.identity(self.flow.n)
        return [
            AffineLift(identity, tuple(AlgebraicNumber.from_rational(field, Fraction(k, q)) for k in ks))
            for ks in itertools.product(range(q), repeat=self.flow.n)
        ]

    def build_torsion_model(
        self,
        subgroup: MultiplierSubgroup,
        q: int,
        word_length_bound: int
    ) -> TorsionModel:
        """
        Close torsion translations and generator lifts under composition.

        Starts from the identity and composes on the left with the unit
        translations e_i / q and with h(g), h(g)^-1 for each generator g,
        keeping products whose matrix lies in the word ball.

        Args:
            subgroup: Multiplier subgroup
            q: Torsion denominator (>= 1)
            word_length_bound: Word length bound for the matrix parts (>= 1)

        Returns:
            The closed TorsionModel

        Raises:
            InvalidModelParametersError: If q < 1 or word_length_bound < 1
            ModelTooLargeError: If the model would exceed the element cap
        """
        if q < 1:
            raise InvalidModelParametersError(f"q must be >= 1, got {q}")
        if word_length_bound < 1:
            raise InvalidModelParametersError(
                f"word_length_bound must be >= 1, got {word_length_bound}"
            )

        n = self.flow.n
        words = self.enumerate_words(subgroup, word_length_bound)
        estimate = q ** n * len(words)
        if estimate > self.element_cap:
            raise ModelTooLargeError(
                f"Model would hold {estimate} elements ({q}^{n} translations x "
                f"{len(words)} matrices), cap is {self.element_cap}"
            )

        field = self.flow.field
        identity = self.symmetry.identity()
        steps: List[AffineLift] = []
        for i in range(n):
            unit = [AlgebraicNumber.zero(field)] * n
            unit[i] = AlgebraicNumber.from_rational(field, Fraction(1, q))
            steps.append(AffineLift.create(IntMatrix.identity(n), unit))
        for generator in subgroup.generators:
            lift = self.splitting_map(generator.value)
            steps.extend([lift, invert(lift)])

        elements = {identity}
        queue = deque([identity])
        while queue:
            current = queue.popleft()
            for step in steps:
                product = compose(step, current)
                if product.matrix not in words or product in elements:
                    continue
                elements.add(product)
                if len(elements) > self.element_cap:
                    raise ModelTooLargeError(
                        f"Closure exceeded the element cap of {self.element_cap}"
                    )
                queue.append(product)

        logger.info(
            "Torsion model for %s with q=%d, word bound %d: %d elements",
            subgroup.describe(), q, word_length_bound, len(elements)
        )
        return TorsionModel(
            subgroup=subgroup,
            q=q,
            word_length_bound=word_length_bound,
            elements=frozenset(elements),
            words=words,
        )

    # ------------------------------------------------------------------
    # Certification
    # ------------------------------------------------------------------

    def _require_member(self, model: TorsionModel, lift: AffineLift, how: str) -> bool:
        """
        Membership test honoring the word-ball truncation.

        Returns False when the matrix is outside the ball (the product is
        outside the model by construction).

        Raises:
            NotClosedError: If the matrix is in the ball but the lift is missing
        """
        if lift.matrix not in model.words:
            return False
        if lift not in model.elements:
            raise NotClosedError(
                f"{how} {lift.format()} escapes the model; raise the word length bound "
                f"relative to q = {model.q}"
            )
        return True

    def _check_closure(self, model: TorsionModel, elements: List[AffineLift]) -> None:
        for x in elements:
            self._require_member(model, invert(x), "Inverse")
        for x, y in itertools.product(elements, repeat=2):
            self._require_member(model, compose(x, y), "Product")

    def certify_structure(self, model: TorsionModel) -> StructureCertificate:
        """
        Certify the semidirect-product structure of a torsion model.

        Runs, by exhaustive enumeration:

        1. Normality of the translation subgroup N (g t g^-1 in N)
        2. N intersect H = {identity}, H the zero-translation matrix part
        3. Unique factorization g = t o h with t in N, h in H
        4. Splitting: products in H match the splitting map of the product multiplier
        5. A non-commuting pair, searched over all ordered element pairs
        6. Commutativity of the matrix parts

        Args:
            model: A TorsionModel from build_torsion_model

        Returns:
            StructureCertificate with the outcome of each check

        Raises:
            NotClosedError: If a product within the word ball escapes the model
        """
        elements = model.sorted_elements()
        translations = model.translations()
        matrix_part = model.matrix_part()
        identity = self.symmetry.identity()
        translation_set = set(translations)

        self._check_closure(model, elements)

        kernel_normal = True
        for g in elements:
            g_inverse = invert(g)
            for t in translations:
                conjugate = compose(compose(g, t), g_inverse)
                if conjugate not in translation_set:
                    kernel_normal = False
                    break
            if not kernel_normal:
                break

        trivial_intersection = translation_set.intersection(matrix_part) == {identity}

        factorization_unique = True
        for g in elements:
            factorizations = sum(
                1 for h in matrix_part if compose(g, invert(h)) in translation_set
            )
            if factorizations != 1:
                factorization_unique = False
                break

        split_verified = True
        try:
            for h in matrix_part:
                if self.splitting_map(self.symmetry.multiplier_of(h).value) != h:
                    split_verified = False
            for h1, h2 in itertools.product(matrix_part, repeat=2):
                alpha = (
                    self.symmetry.multiplier_of(h1).value * self.symmetry.multiplier_of(h2).value
                )
                if compose(h1, h2) != self.splitting_map(alpha):
                    split_verified = False
                    break
        except SymmetryError as e:
            logger.info("Splitting check failed: %s", e)
            split_verified = False

        witness = None
        if len(matrix_part) > 1:
            for x, y in itertools.combinations(elements, 2):
                if compose(x, y) != compose(y, x):
                    witness = (x.format(), y.format())
                    break

        matrices_commute = all(
            h1.matrix @ h2.matrix == h2.matrix @ h1.matrix
            for h1, h2 in itertools.combinations(matrix_part, 2)
        )

        certificate = StructureCertificate(
            split_verified=split_verified,
            kernel_normal=kernel_normal,
            trivial_intersection=trivial_intersection,
            factorization_unique=factorization_unique,
            nonabelian=witness is not None,
            matrices_commute=matrices_commute,
            word_length_bound=model.word_length_bound,
            q=model.q,
            size=model.size,
            witness=witness,
        )
        logger.info("Certificate for model of size %d: %s", model.size, certificate.flags())
        return certificate


def render_certificate(certificate: StructureCertificate) -> List[str]:
    """
    Report lines for a certificate.

    Returns:
        One ``CHECK<TAB>name<TAB>PASS|FAIL`` line per flag, followed by a
        ``WITNESS<TAB>noncommute<TAB>e1<TAB>e2`` line when a witness exists
    """
    lines = [
        f"CHECK\t{name}\t{'PASS' if passed else 'FAIL'}"
        for name, passed in certificate.flags().items()
    ]
    if certificate.witness is not None:
        lines.append(f"WITNESS\tnoncommute\t{certificate.witness[0]}\t{certificate.witness[1]}")
    return lines

