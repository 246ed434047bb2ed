"""
Agent checkpoints: a header (config, seed, step counters) followed by the
four networks in the nn parameter format.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from ..errors import CheckpointError, ConfigurationError
from ..nn import mlp_from_dict, mlp_to_dict
from .agent import AgentConfig, DdpgAgent
from .snapshot import PolicySnapshot

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
NETWORKS = ("actor", "critic", "target_actor", "target_critic")


def checkpoint_to_dict(agent: DdpgAgent) -> Dict[str, Any]:
    return {
        "header": {
            "checkpoint_version": CHECKPOINT_VERSION,
            "config": agent.config.to_dict(),
            "seed": agent.config.seed,
            "total_steps": agent.total_steps,
            "update_steps": agent.update_steps,
        },
        "networks": {name: mlp_to_dict(getattr(agent, name)) for name in NETWORKS},
    }


def save_checkpoint(agent: DdpgAgent, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(checkpoint_to_dict(agent), f, indent=1)
        f.write("\n")
    logger.info(f"Checkpoint written to {path}")
    return path


def _read(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"Checkpoint not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError(f"Corrupted checkpoint {path}: {e}") from e
    if not isinstance(payload, dict) or "header" not in payload or "networks" not in payload:
        raise CheckpointError(f"Corrupted checkpoint {path}: missing header or networks")
    version = payload["header"].get("checkpoint_version") if isinstance(payload["header"], dict) else None
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"Unsupported checkpoint version {version!r} in {path}")
    return payload


def load_agent(path: Union[str, Path]) -> DdpgAgent:
    """Rebuild an agent with all four networks and its step counters; replay memory starts empty."""
    payload = _read(path)
    header = payload["header"]
    try:
        agent = DdpgAgent(AgentConfig(**header["config"]))
    except (TypeError, KeyError, ConfigurationError) as e:
        raise CheckpointError(f"Checkpoint {path} has an invalid config: {e}") from e
    for name in NETWORKS:
        if name not in payload["networks"]:
            raise CheckpointError(f"Checkpoint {path} is missing network '{name}'")
        restored = mlp_from_dict(payload["networks"][name])
        if restored.layer_sizes != getattr(agent, name).layer_sizes:
            raise CheckpointError(
                f"Checkpoint {path}: {name} has layers {restored.layer_sizes}, "
                f"config implies {getattr(agent, name).layer_sizes}"
            )
        setattr(agent, name, restored)
    agent.total_steps = int(header.get("total_steps", 0))
    agent.update_steps = int(header.get("update_steps", 0))
    return agent


def load_policy(path: Union[str, Path]) -> PolicySnapshot:
    payload = _read(path)
    actor = payload["networks"].get("actor") if isinstance(payload["networks"], dict) else None
    if actor is None:
        raise CheckpointError(f"Checkpoint {path} has no actor network")
    return PolicySnapshot(mlp_from_dict(actor))
