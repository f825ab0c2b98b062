"""Shortlex normal forms in the triangle group with all exponents 4.

Runs the two normal-form tests on a word whose prefix already loses to a
smaller word, and shows where the streaming recognizer gives up.
"""

from coxsep.presentation import CoxeterPresentation
from coxsep.rewriting import (build_normal_form_recognizer, dehn_reduce, format_word, is_shortlex_normal,
                              normal_form)

g4 = CoxeterPresentation.uniform(3, 4)
rs = g4.relators()

w = (2, 1, 2, 1, 3, 2, 3, 1, 2, 1, 2, 3)
print("w            =", format_word(w))
print("Dehn reduced =", format_word(dehn_reduce(rs, w)))
print("normal form  =", format_word(normal_form(rs, w)))
print("normal?      =", is_shortlex_normal(rs, w, "reference"))

rec = build_normal_form_recognizer(rs)
print(f"recognizer: {rec.size} states, rejects at letter {rec.run(w)}")

# the first four letters are half a relator read the long way round
print(format_word(w[:4]), "->", format_word(normal_form(rs, w[:4])))
