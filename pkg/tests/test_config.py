import logging

import pytest

from flatband.core.config import get_config, reset_config
from flatband.core.events import EventLogger


class TestConfig:
    def test_defaults(self):
        config = get_config()
        assert config.grid_side == 11
        assert config.torus_cap == 4096
        assert config.seed == 0
        assert config.log_file is None

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv('FLATBAND_GRID_SIDE', '7')
        monkeypatch.setenv('FLATBAND_EXPLOSION_CAP', '100')
        reset_config()
        config = get_config()
        assert (config.grid_side, config.explosion_cap) == (7, 100)

    def test_cached_until_reset(self, monkeypatch):
        first = get_config()
        monkeypatch.setenv('FLATBAND_SEED', '5')
        assert get_config() is first
        reset_config()
        assert get_config().seed == 5

    @pytest.mark.parametrize("var, value", [
        ('FLATBAND_GRID_SIDE', '4'),
        ('FLATBAND_TORUS_CAP', 'many'),
        ('FLATBAND_EXPLOSION_CAP', '0'),
        ('FLATBAND_LOG_LEVEL', 'LOUD'),
    ])
    def test_invalid_values(self, monkeypatch, var, value):
        monkeypatch.setenv(var, value)
        reset_config()
        with pytest.raises(ValueError):
            get_config()


class TestEventLogger:
    def test_writes_to_the_event_log(self, tmp_path):
        path = tmp_path / "events.log"
        EventLogger(str(path)).log_event("PROBE_HIT", "trial 3", base=2)
        for handler in logging.getLogger('flatband.events').handlers:
            handler.flush()
        text = path.read_text()
        assert "EVENT: PROBE_HIT | DETAILS: trial 3 | BASE: 2" in text

    def test_one_handler_per_path(self, tmp_path):
        path = str(tmp_path / "events.log")
        EventLogger(path)
        EventLogger(path)
        handlers = [h for h in logging.getLogger('flatband.events').handlers
                    if getattr(h, 'baseFilename', None) == path]
        assert len(handlers) == 1
