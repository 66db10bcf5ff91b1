"""Tests for the utils package: seeding, logging and JSON helpers."""

import logging

import numpy as np
import pytest

from qaoabench.utils.json_utils import dumps_json, dumps_json_line
from qaoabench.utils.logging import configure_worker_logging, get_logger, setup_logging
from qaoabench.utils.seeding import derive_seed, make_rng


class TestSeeding:
    """Tests for derive_seed and make_rng."""

    def test_same_keys_same_seed(self):
        assert derive_seed(7, "start", 3) == derive_seed(7, "start", 3)

    def test_keys_separate_streams(self):
        seeds = {
            derive_seed(7, "start", 3),
            derive_seed(7, "start", 4),
            derive_seed(7, "noise", 3),
            derive_seed(8, "start", 3),
        }
        assert len(seeds) == 4

    def test_seed_is_unsigned_64_bit(self):
        seed = derive_seed(2018, "instance", 0)
        assert 0 <= seed < 2**64

    def test_negative_key_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            derive_seed(1, -1)

    def test_make_rng_is_reproducible(self):
        a = make_rng(42).random(5)
        b = make_rng(42).random(5)
        np.testing.assert_array_equal(a, b)
        assert isinstance(make_rng(42).bit_generator, np.random.Philox)


class TestLogging:
    """Tests for setup_logging and get_logger."""

    def test_get_logger_prefixes_package(self):
        assert get_logger("core.bfgs").name == "qaoabench.core.bfgs"
        assert get_logger("qaoabench.cli").name == "qaoabench.cli"

    def test_setup_replaces_handlers(self):
        setup_logging("DEBUG", use_colors=False)
        logger = setup_logging("WARNING", use_colors=False)

        assert logger.level == logging.WARNING
        assert len(logger.handlers) == 1

    def test_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        setup_logging("INFO", log_file=log_file, use_colors=False)

        get_logger("test").info("hello file")
        for handler in logging.getLogger("qaoabench").handlers:
            handler.flush()

        assert "hello file" in log_file.read_text(encoding="utf-8")
        setup_logging("INFO", use_colors=False)

    def test_worker_logging_tags_process(self):
        setup_logging("INFO", use_colors=False)
        configure_worker_logging(logging.DEBUG)

        logger = logging.getLogger("qaoabench")

        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        assert "processName" in logger.handlers[0].formatter._fmt
        setup_logging("INFO", use_colors=False)


class TestJsonHelpers:
    def test_json_line_is_sorted_and_compact(self):
        assert dumps_json_line({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'

    def test_numpy_values_serialize(self):
        data = {"point": np.array([0.5, 1.5]), "reps": np.int64(3), "ratio": np.float64(0.25)}

        assert dumps_json_line(data) == '{"point":[0.5,1.5],"ratio":0.25,"reps":3}'
        assert '"reps": 3' in dumps_json(data)

    def test_unknown_objects_still_fail(self):
        with pytest.raises(TypeError, match="set"):
            dumps_json_line({"a": {1, 2}})
