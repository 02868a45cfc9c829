"""Compile an order-1 addition gadget and run it on a four-anyon chain.

Shows the whole pipeline in one place: recursive word construction, weave
compilation to a move program, translation to adjacent exchanges, and
execution on the fusion-path simulator.
"""
from fibweave import Chain, compile_weave, gadget_exchanges, m_word, word_metrics
from fibweave.model import TAU_F
from fibweave.weave import program_to_text
from fibweave.words import SEED_WEAVE

word = m_word(1, SEED_WEAVE)
metrics = word_metrics(word)
print(f"order-1 word: {metrics['f_count']} F tokens, "
      f"{metrics['elementary_braid_count']} elementary braids")

program = compile_weave(word, ("Pair", "D"))
print(f"\ncompiled program ({program.move_count} moves, "
      f"{len(program.closing)} closing):\n")
print(program_to_text(program))

exchanges = gadget_exchanges(program, left=2)
print(f"as adjacent exchanges on a 4-anyon chain: {len(exchanges)} swaps")

state = Chain.init_pairs([1, 1]).apply_exchanges(exchanges)
p0, p1 = state.cut_distribution(2)
target = 1 - TAU_F**-20
print(f"\ncut charge after the gadget: P(1) = {p1:.15f}")
print(f"golden-ratio target 1 - tau^-20 = {target:.15f}")
print(f"difference: {abs(p1 - target):.2e}")
