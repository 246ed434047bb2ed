"""DDPG agent, replay memory, training loop and checkpoints."""

from .replay_buffer import ReplayBuffer, Transition, TransitionBatch
from .snapshot import PolicySnapshot
from .agent import AgentConfig, DdpgAgent, StepReport, networks_equal, soft_update
from .trainer import EpisodeRecord, TrainingHistory, run_training
from .checkpoint import load_agent, load_policy, save_checkpoint

__all__ = [
    'ReplayBuffer', 'Transition', 'TransitionBatch', 'PolicySnapshot',
    'AgentConfig', 'DdpgAgent', 'StepReport', 'networks_equal', 'soft_update',
    'EpisodeRecord', 'TrainingHistory', 'run_training',
    'load_agent', 'load_policy', 'save_checkpoint',
]
