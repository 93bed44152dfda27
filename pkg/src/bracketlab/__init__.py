"""bracketlab: a workbench for bracket algebras and replication formalisms.

The package groups several small formal systems that share one notational
idea, the splitting of a delimiter pair into its left and right halves:

- ``boundary``: the combinatorial algebra of containers (``<>``) and
  extainers (``><``) over the four bracket symbols.
- ``tl``: the Temperley-Lieb algebra of non-crossing planar matchings
  with loop-counting composition.
- ``bracket``: the bracket state sum on layered tangle diagrams and its
  Reidemeister-II invariance.
- ``folding``: bra/ket folding chains, secondary-structure and
  pseudoknot classification, and graph retraction to K7.
- ``rewrite``: token rewrite systems for strand duplication, the
  universal builder, and fixed-point unfolding.
- ``quantum``: finite-dimensional bra/ket arithmetic, completeness
  expansion, and the cloning discrepancy.
- ``life``: a sparse Game of Life engine with geometric period
  detection and an exhaustive period-48 seed search.
- ``protocell``: the stochastic substrate/catalyst bonding lattice.
"""

__version__ = "0.1.0"
