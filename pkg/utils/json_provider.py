import json
from fractions import Fraction

from flask.json.provider import JSONProvider
from pydantic import BaseModel
from pydantic_core import to_jsonable_python

from validation_schemas.schemas import format_rational


class ExactJSONProvider(JSONProvider):
    """Serializes pydantic documents and leaves exact rationals as "p/q" strings."""

    @staticmethod
    def _default(obj):
        if isinstance(obj, BaseModel):
            return obj.model_dump(mode='json')
        if isinstance(obj, Fraction):
            return format_rational(obj)
        return to_jsonable_python(obj)

    def dumps(self, obj, **kwargs):
        return json.dumps(obj, default=self._default, **kwargs)

    def loads(self, s, **kwargs):
        return json.loads(s, **kwargs)
