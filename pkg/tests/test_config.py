"""Tests for configuration module."""
import os

from src.core.config import RunConfig, default_threads


class TestRunConfig:
    """Test cases for RunConfig."""

    def test_config_minimal(self):
        """Test defaults of a bare configuration."""
        config = RunConfig(command="analyze", threads=1)
        assert config.command == "analyze"
        assert config.subcommand == ""
        assert config.input == ""
        assert config.output == ""
        assert config.witness == ""
        assert config.params == {}
        assert config.seed == 0
        assert config.budget == 0
        assert config.verbose is False

    def test_config_params(self, temp_config):
        """Test parameter lookup with defaults."""
        assert temp_config.param("p") == 7
        assert temp_config.param("core", "vertex") == "vertex"

    def test_none_param_uses_default(self):
        """Test that options left unset by the CLI fall back to the default."""
        config = RunConfig(command="verify", params={"radius": None}, threads=1)
        assert config.param("radius", 1) == 1

    def test_params_are_copied(self):
        """Test that the caller's dict is not shared."""
        params = {"p": 7}
        config = RunConfig(command="generate", params=params, threads=1)
        params["p"] = 8
        assert config.param("p") == 7

    def test_dict_round_trip(self, temp_config):
        """Test to_dict and from_dict."""
        data = temp_config.to_dict()
        assert data["params"] == {"p": 7, "q": 3, "height": 2}
        assert data["threads"] == 1
        assert RunConfig.from_dict(data) == temp_config

    def test_repr(self, temp_config):
        """Test the short representation."""
        assert repr(temp_config) == "RunConfig(generate)"
        config = RunConfig(command="verify", subcommand="weil", threads=1)
        assert repr(config) == "RunConfig(verify weil)"


class TestDefaultThreads:
    """Test cases for the worker count."""

    def test_threads_from_environment(self, monkeypatch):
        """Test TESSERA_THREADS."""
        monkeypatch.setenv("TESSERA_THREADS", "3")
        assert default_threads() == 3
        assert RunConfig(command="search").threads == 3

    def test_invalid_value_falls_back(self, monkeypatch):
        """Test that a non-numeric value uses the core count."""
        monkeypatch.setenv("TESSERA_THREADS", "many")
        monkeypatch.setattr(os, "cpu_count", lambda: 5)
        assert default_threads() == 5

    def test_explicit_threads_win(self, monkeypatch):
        """Test that an explicit count overrides the environment."""
        monkeypatch.setenv("TESSERA_THREADS", "3")
        assert RunConfig(command="search", threads=2).threads == 2

    def test_threads_from_dotenv(self, monkeypatch, tmp_path):
        """Test that a .env file in the working directory sets the count."""
        monkeypatch.setenv("TESSERA_THREADS", "")
        monkeypatch.delenv("TESSERA_THREADS")
        (tmp_path / ".env").write_text("TESSERA_THREADS=4\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        assert default_threads() == 4
