"""Game solving and adversarial decision toolkit."""
