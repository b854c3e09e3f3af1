from pac4sac.replay.buffer import ReplayBuffer

__all__ = ["ReplayBuffer"]
