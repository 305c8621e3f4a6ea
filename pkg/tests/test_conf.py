import json

import pytest

from negsssp.conf import settings

def test_defaults():
    assert settings.weight_exponent == 4
    assert settings.batch_disjoint_calls is True
    with pytest.raises(AttributeError):
        settings.no_such_setting

def test_override_restores():
    before = settings.ldd_c
    with settings.override(ldd_c=before + 5):
        assert settings.ldd_c == before + 5
    assert settings.ldd_c == before
    with pytest.raises(KeyError):
        with settings.override(bogus=1):
            pass

def test_listeners_see_changes():
    seen = []
    def callback(key, value):
        seen.append((key, value))
    settings.add_listener(callback)
    settings.add_listener(callback)
    try:
        with settings.override(threads=4):
            pass
    finally:
        settings._listeners.remove(callback)
    assert seen == [("threads", 4), ("threads", 1)]

def test_load(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"solve_restarts": 7}))
    before = settings.solve_restarts
    try:
        assert settings.load(str(path))
        assert settings.solve_restarts == 7
    finally:
        settings.solve_restarts = before

def test_load_rejects_bad_files(tmp_path):
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"ldd_k": 3}))
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    listing = tmp_path / "list.json"
    listing.write_text("[]")
    for path in (unknown, broken, listing, tmp_path / "missing.json"):
        assert not settings.load(str(path))
