"""Handling of the tinydb database caching computed Hurwitz numbers.

Values are exact rationals and are stored through dedicated serializers so
that nothing is ever converted to a float on disk.
"""
import logging
from datetime import datetime
from fractions import Fraction
from pathlib import Path

from tinydb import TinyDB, where
from tinydb.storages import JSONStorage, MemoryStorage
# Serializer
from tinydb_serialization import Serializer
from tinydb_serialization import SerializationMiddleware

from .combinatorics import Partition
from .helpers import format_parts, format_rational, mkdirs, parse_rational

logger = logging.getLogger(__name__)


# Serializers only apply to top level fields of a document
class DateTimeSerializer(Serializer):
    "Serializer for storing datetime.datetime objects using tinydb"

    OBJ_CLASS = datetime  # The class this serializer handles

    def __init__(self, date_format="%Y%m%d-%H:%M:%S"):
        "Initialize the date serializer with a specified datetime format"
        self.date_format = date_format
        super().__init__()

    def encode(self, obj):
        "Convert from datetime to string using the custom datetime format"
        return obj.strftime(self.date_format)

    def decode(self, s):
        "Convert from string to datetime using the custom datetime format"
        return datetime.strptime(s, self.date_format)


class FractionSerializer(Serializer):
    "Serializer for storing exact rationals as p/q strings"

    OBJ_CLASS = Fraction

    def encode(self, obj):
        return format_rational(obj)

    def decode(self, s):
        return parse_rational(s)


class PartitionSerializer(Serializer):
    "Serializer for storing partitions as comma separated parts"

    OBJ_CLASS = Partition

    def encode(self, obj):
        return format_parts(obj.parts)

    def decode(self, s):
        return Partition(tuple(int(p) for p in s.split(",") if p))


def result_key(kind: str, g: int, mu, nu, labeled: bool = False,
               connected: bool = True) -> str:
    "Unique string identifying a cached value, parts kept in the given order"
    return "|".join([kind, str(g), format_parts(mu), format_parts(nu),
                     str(int(labeled)), str(int(connected))])


class HurwitzDB(TinyDB):
    "Tinydb database storing computed Hurwitz numbers"

    def __init__(self, path=None, **kwargs):
        """Initialize the database with extended object type handlers.

        Without a path the database lives in memory only.
        """
        if path is None:
            serialization = SerializationMiddleware(MemoryStorage)
            args = ()
        else:
            path = Path(path).expanduser()
            mkdirs(path.parent)
            serialization = SerializationMiddleware(JSONStorage)
            args = (str(path),)
            kwargs.setdefault("indent", 4)

        # Add the date, rational and partition serializers
        serialization.register_serializer(DateTimeSerializer(), "TinyDate")
        serialization.register_serializer(FractionSerializer(), "TinyFraction")  # noqa E501
        serialization.register_serializer(PartitionSerializer(), "TinyPartition")  # noqa E501

        kwargs.update({"storage": serialization})
        super().__init__(*args, **kwargs)

    @property
    def results_table(self):
        "Table containing one computed value per key"
        return self.table("results", cache_size=0)

    def get_value(self, kind: str, g: int, mu, nu,
                  labeled: bool = False, connected: bool = True):
        "Return a cached value or None"
        key = result_key(kind, g, mu, nu, labeled, connected)
        entry = self.results_table.get(where("key") == key)
        if entry is None:
            return None
        return entry["value"]

    def store_value(self, kind: str, g: int, mu, nu,
                    value: Fraction, labeled: bool = False,
                    connected: bool = True):
        "Insert or replace a computed value"
        key = result_key(kind, g, mu, nu, labeled, connected)
        entry = {"key": key, "kind": kind, "g": g,
                 "mu": Partition.from_parts(mu),
                 "nu": Partition.from_parts(nu),
                 "labeled": labeled, "connected": connected,
                 "value": Fraction(value), "computed_on": datetime.now()}
        self.results_table.upsert(entry, where("key") == key)

    def cached(self, kind: str, g: int, mu, nu,
               compute, labeled: bool = False, connected: bool = True):
        "Return the cached value, computing and storing it when missing"
        value = self.get_value(kind, g, mu, nu, labeled, connected)
        if value is None:
            value = Fraction(compute())
            self.store_value(kind, g, mu, nu, value, labeled, connected)
        else:
            logger.debug("Cache hit for %s g=%d mu=%s nu=%s", kind, g, mu, nu)
        return value

    def clear_results(self):
        "Drop every cached value"
        self.drop_table("results")
