"""
Construction certificates and their JSON form.

The JSON body is deterministic: sorted keys, integers for all arithmetic
data, schema version under ``"v"``. Creation metadata lives under a detached
``"meta"`` object that is never part of payload comparison.
"""
import json
from datetime import datetime, timezone

from django.core.serializers.json import DjangoJSONEncoder

from genusforge import __version__
from genusforge.exceptions import InvalidParameters

SCHEMA_VERSION = 1

FAMILY_TAGS = ('abelian', 'hyperelliptic', 'toric', 'tame')

RESERVED = ('v', 'family', 'q', 'genus', 'points_lb', 'verification', 'meta')


class CurveCertificate(object):

    def __init__(self, family, q, genus, points_lb, payload, verification=None, meta=None):
        if family not in FAMILY_TAGS:
            raise InvalidParameters('unknown certificate family %r' % family, family=family)
        if genus < 0 or points_lb < 0:
            raise InvalidParameters('genus and point bound must be nonnegative', genus=genus, points_lb=points_lb)
        self.family = family
        self.q = q
        self.genus = genus
        self.points_lb = points_lb
        self.payload = dict(payload)
        self.verification = verification
        self.meta = meta

    def __repr__(self):
        return '<CurveCertificate %s q=%s genus=%s points_lb=%s>' % (self.family, self.q, self.genus, self.points_lb)

    @property
    def enumerable(self):
        return self.payload.get('enumerable', True)

    def body(self):
        """Everything a construction determines, without verification or metadata."""
        body = dict(self.payload)
        body.update({
            'v': SCHEMA_VERSION,
            'family': self.family,
            'q': self.q,
            'genus': self.genus,
            'points_lb': self.points_lb,
        })
        return body

    def same_construction(self, other):
        return self.body() == other.body()

    def to_dict(self):
        data = self.body()
        if self.verification is not None:
            data['verification'] = self.verification
        if self.meta:
            data['meta'] = self.meta
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), cls=DjangoJSONEncoder, sort_keys=True, indent=2) + '\n'

    def stamp(self, timestamp=False):
        self.meta = {'version': __version__}
        if timestamp:
            self.meta['created'] = datetime.now(timezone.utc).isoformat()
        return self

    @classmethod
    def from_dict(cls, data):
        version = data.get('v')
        if version != SCHEMA_VERSION:
            raise InvalidParameters('unsupported certificate schema %r' % version, v=version)
        missing = [key for key in ('family', 'q', 'genus', 'points_lb') if key not in data]
        if missing:
            raise InvalidParameters('certificate lacks %s' % ', '.join(missing))
        for key in ('q', 'genus', 'points_lb'):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise InvalidParameters('certificate field %s must be an integer' % key, field=key)
        payload = dict((key, value) for key, value in data.items() if key not in RESERVED)
        return cls(data['family'], data['q'], data['genus'], data['points_lb'], payload,
                   verification=data.get('verification'), meta=data.get('meta'))

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except ValueError as e:
            raise InvalidParameters('certificate is not valid JSON: %s' % e)
        if not isinstance(data, dict):
            raise InvalidParameters('certificate must be a JSON object')
        return cls.from_dict(data)
