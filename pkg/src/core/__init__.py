"""Core numerics: networks, descriptors, environment, agent, data and evaluation."""
