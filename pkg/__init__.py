"""CogRadar package initialization."""
