import json
import logging
import os.path

from contextlib import contextmanager

log = logging.getLogger('conf')

class Settings(object):
    _listeners = []

    _path = None
    _data = {
        "weight_exponent":           4,
        "int64_guard":               True,
        "ldd_c":                     8,
        "scaledown_c_h":             3,
        "scc_depth_slack":           8,
        "sp_main_retries":           20,
        "solve_restarts":            50,
        "find_thresh_repeats":       0,
        "batch_disjoint_calls":      True,
        "check_oracle_certificates": False,
        "threads":                   1
    }

    def __getattr__(self, name):
        try:
            return self._data[name]
        except KeyError:
            raise AttributeError(name)

    def __setattr__(self, name, value):
        if name in self._data:
            self._data[name] = value

            for callback in self._listeners:
                try:
                    callback(name, value)
                except Exception as e:
                    log.error("Settings listener failed for %s: %s" % (name, e))
        else:
            super(Settings, self).__setattr__(name, value)

    def load(self, path):
        """
        Merge a JSON object of settings into the defaults. Unknown keys are
        rejected so a typo in a config file never silently falls back.
        """
        if not os.path.exists(path):
            log.error("Settings file does not exist: %s" % path)
            return False

        try:
            with open(path, "r") as fh:
                data = json.load(fh)
        except Exception as e:
            log.error("Error loading settings from %s: %s" % (path, e))
            return False

        if not isinstance(data, dict):
            log.error("Settings file %s must hold a JSON object" % path)
            return False

        unknown = sorted(set(data) - set(self._data))
        if unknown:
            log.error("Unknown settings in %s: %s" % (path, ", ".join(unknown)))
            return False

        for key, value in data.items():
            setattr(self, key, value)

        self._path = path
        return True

    def as_dict(self):
        return dict(self._data)

    @contextmanager
    def override(self, **values):
        saved = {}
        for key, value in values.items():
            if key not in self._data:
                raise KeyError(key)
            saved[key] = self._data[key]
            setattr(self, key, value)
        try:
            yield self
        finally:
            for key, value in saved.items():
                setattr(self, key, value)

    def add_listener(self, callback):
        """
        Register a callback to be called anytime a setting value changes.
        An example callback function:

            def my_callback(key, value):
                # Do something with the new setting ``value``...

        """
        if callback not in self._listeners:
            self._listeners.append(callback)

settings = Settings()
