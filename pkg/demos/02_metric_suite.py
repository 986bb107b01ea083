"""Score a generated text against its reference with the native metric suite.

BLEU-4, ROUGE-1/2/L and METEOR compare against a reference; FKGL, DCRS and
CLI are reference-free readability grades (higher = harder to read).
"""

from dischargekit import bleu4, meteor, rouge_1, rouge_2, rouge_l, tokenize
from dischargekit.readability import cli, dcrs, fkgl

reference = (
    "Rest at home and drink plenty of water. Take the antibiotics with food "
    "for seven days. Call the office if the fever returns or the wound looks red."
)
candidate = (
    "Rest at home and drink water. Take your antibiotics with food for seven "
    "days. Call the clinic if fever returns."
)

print("reference:", reference)
print("candidate:", candidate)
print()
for name, fn in [
    ("bleu4", bleu4),
    ("rouge_1", rouge_1),
    ("rouge_2", rouge_2),
    ("rouge_l", rouge_l),
    ("meteor", meteor),
]:
    print(f"{name:>8}: {fn(candidate, reference):.4f}")

tok = tokenize(candidate)
print()
print(f"    fkgl: {fkgl(tok):.2f}   (school-grade estimate)")
print(f"    dcrs: {dcrs(tok):.2f}   (familiar-word difficulty)")
print(f"     cli: {cli(tok):.2f}   (letter/sentence density)")
