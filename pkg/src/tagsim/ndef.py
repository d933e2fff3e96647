"""NDEF message codec and the device-information payload carried on tags.

Wire format follows the standard NDEF record framing: each record starts
with a header byte (MB 0x80, ME 0x40, CF 0x20, SR 0x10, IL 0x08, TNF in
the low three bits), then type length, payload length (1 byte short form,
4 bytes long form), optional id length, then type / id / payload bytes.
Payloads are capped at 65,535 bytes here; the 4-byte long form is still
accepted on decode.

Device information is packed as one URI record followed by one text
record per populated field.  Text records use the well-known 'T' layout
(status byte + language code + UTF-8 text) and carry the field key in the
record id.  The "pw" record holds the buzzer password; it exists only on
the NFC side and is never copied into radio frames or discovery listings.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from urllib.parse import urlsplit

MAX_PAYLOAD = 0xFFFF

_MB = 0x80
_ME = 0x40
_CF = 0x20
_SR = 0x10
_IL = 0x08

TNF_WELL_KNOWN = 0x01

# URI abbreviation table from the public NDEF URI record convention.
# Only codes 0x00-0x04 are ever emitted; the rest are accepted on decode.
URI_PREFIXES = {
    0x00: "",
    0x01: "http://www.",
    0x02: "https://www.",
    0x03: "http://",
    0x04: "https://",
    0x05: "tel:",
    0x06: "mailto:",
    0x07: "ftp://anonymous:anonymous@",
    0x08: "ftp://ftp.",
    0x09: "ftps://",
    0x0A: "sftp://",
    0x0B: "smb://",
    0x0C: "nfs://",
    0x0D: "ftp://",
    0x0E: "dav://",
    0x0F: "news:",
    0x10: "telnet://",
    0x11: "imap:",
    0x12: "rtsp://",
    0x13: "urn:",
    0x14: "pop:",
    0x15: "sip:",
    0x16: "sips:",
    0x17: "tftp:",
    0x18: "btspp://",
    0x19: "btl2cap://",
    0x1A: "btgoep://",
    0x1B: "tcpobex://",
    0x1C: "irdaobex://",
    0x1D: "file://",
    0x1E: "urn:epc:id:",
    0x1F: "urn:epc:tag:",
    0x20: "urn:epc:pat:",
    0x21: "urn:epc:raw:",
    0x22: "urn:epc:",
    0x23: "urn:nfc:",
}

_EMIT_CODES = (0x02, 0x04, 0x01, 0x03)  # longest prefix first within each scheme


class NdefError(ValueError):
    """Base class for NDEF codec failures."""


class Truncated(NdefError):
    pass


class BadHeader(NdefError):
    pass


class EmptyMessage(NdefError):
    pass


class NotAUriRecord(NdefError):
    pass


class UnknownPrefixCode(NdefError):
    pass


class MissingUrl(NdefError):
    pass


class DuplicateField(NdefError):
    pass


class InvalidDeviceInfo(NdefError):
    pass


@dataclass(frozen=True)
class NdefRecord:
    tnf: int
    type: bytes
    payload: bytes
    id: bytes | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.tnf <= 7:
            raise BadHeader(f"tnf out of range: {self.tnf}")
        if len(self.payload) > MAX_PAYLOAD:
            raise BadHeader(f"payload too long: {len(self.payload)} bytes")
        if len(self.type) > 0xFF:
            raise BadHeader("type too long")
        if self.id is not None and len(self.id) > 0xFF:
            raise BadHeader("id too long")


def encode_message(records: list[NdefRecord]) -> bytes:
    """Serialize records with MB on the first and ME on the last."""
    if not records:
        raise EmptyMessage("a message needs at least one record")
    out = bytearray()
    last = len(records) - 1
    for n, rec in enumerate(records):
        short = len(rec.payload) <= 0xFF
        hdr = rec.tnf
        if short:
            hdr |= _SR
        if rec.id is not None:
            hdr |= _IL
        if n == 0:
            hdr |= _MB
        if n == last:
            hdr |= _ME
        out.append(hdr)
        out.append(len(rec.type))
        if short:
            out.append(len(rec.payload))
        else:
            out += len(rec.payload).to_bytes(4, "big")
        if rec.id is not None:
            out.append(len(rec.id))
        out += rec.type
        if rec.id is not None:
            out += rec.id
        out += rec.payload
    return bytes(out)


def decode_message(data: bytes) -> list[NdefRecord]:
    """Parse a full NDEF message back into records."""
    if not data:
        raise EmptyMessage("no bytes to decode")
    records: list[NdefRecord] = []
    pos = 0
    end_seen = False
    while pos < len(data):
        if end_seen:
            raise BadHeader("data after the message-end record")
        hdr = data[pos]
        pos += 1
        if hdr & _CF:
            raise BadHeader("chunked records are not supported")
        if (hdr & _MB) != (_MB if not records else 0):
            raise BadHeader("message-begin flag on the wrong record")
        end_seen = bool(hdr & _ME)
        try:
            type_len = data[pos]
            pos += 1
            if hdr & _SR:
                payload_len = data[pos]
                pos += 1
            else:
                if pos + 4 > len(data):
                    raise IndexError
                payload_len = int.from_bytes(data[pos : pos + 4], "big")
                pos += 4
            id_len = 0
            if hdr & _IL:
                id_len = data[pos]
                pos += 1
        except IndexError:
            raise Truncated("record header runs past the end") from None
        if pos + type_len + id_len + payload_len > len(data):
            raise Truncated("record body runs past the end")
        rtype = data[pos : pos + type_len]
        pos += type_len
        rid = data[pos : pos + id_len] if hdr & _IL else None
        pos += id_len
        payload = data[pos : pos + payload_len]
        pos += payload_len
        records.append(NdefRecord(hdr & 0x07, bytes(rtype), bytes(payload), rid))
    if not end_seen:
        raise Truncated("message-end flag never seen")
    return records


def encode_uri(uri: str) -> NdefRecord:
    """Build a well-known URI record, abbreviating with the longest prefix."""
    if not uri:
        raise NdefError("uri must be non-empty")
    for code in _EMIT_CODES:
        prefix = URI_PREFIXES[code]
        if uri.startswith(prefix):
            return NdefRecord(
                TNF_WELL_KNOWN, b"U", bytes((code,)) + uri[len(prefix) :].encode()
            )
    return NdefRecord(TNF_WELL_KNOWN, b"U", b"\x00" + uri.encode())


def decode_uri(record: NdefRecord) -> str:
    if record.tnf != TNF_WELL_KNOWN or record.type != b"U":
        raise NotAUriRecord(f"tnf={record.tnf} type={record.type!r}")
    if not record.payload:
        raise Truncated("uri record has no payload")
    code = record.payload[0]
    try:
        prefix = URI_PREFIXES[code]
    except KeyError:
        raise UnknownPrefixCode(f"prefix code 0x{code:02x}") from None
    return prefix + record.payload[1:].decode()


def _is_uri_record(record: NdefRecord) -> bool:
    return record.tnf == TNF_WELL_KNOWN and record.type == b"U"


def encode_text(key: str, text: str) -> NdefRecord:
    """Well-known text record (UTF-8, language 'en') keyed by the record id."""
    return NdefRecord(
        TNF_WELL_KNOWN, b"T", b"\x02en" + text.encode(), key.encode("ascii")
    )


def decode_text(record: NdefRecord) -> str:
    if record.tnf != TNF_WELL_KNOWN or record.type != b"T":
        raise BadHeader(f"not a text record: tnf={record.tnf} type={record.type!r}")
    if not record.payload:
        raise Truncated("text record has no payload")
    status = record.payload[0]
    if status & 0x80:
        raise BadHeader("UTF-16 text records are not supported")
    lang_len = status & 0x3F
    return record.payload[1 + lang_len :].decode()


@dataclass
class DeviceInfo:
    """Everything a tag discloses at touch range about the attached device."""

    url: str
    name: str = ""
    vendor: str = ""
    functionalities: str = ""
    data_collection: str = ""
    firmware_version: str = ""
    vulnerability_notes: str = ""
    buzzer_password: str | None = None

    def __post_init__(self) -> None:
        if not self.url or not urlsplit(self.url).scheme:
            raise InvalidDeviceInfo(f"url must be an absolute URI: {self.url!r}")
        if self.buzzer_password is not None:
            raw = self.buzzer_password.encode()
            if not 4 <= len(raw) <= 32:
                raise InvalidDeviceInfo("buzzer password must be 4-32 UTF-8 bytes")

    def to_dict(self) -> dict:
        out = {"url": self.url}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name != "url" and value:
                out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DeviceInfo":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidDeviceInfo(f"unknown fields: {sorted(unknown)}")
        return cls(**data)


# Record-id keys for each text field, in pack order.
FIELD_KEYS = (
    ("name", b"name"),
    ("vendor", b"vendor"),
    ("functionalities", b"func"),
    ("data_collection", b"collect"),
    ("firmware_version", b"fw"),
    ("vulnerability_notes", b"vuln"),
    ("buzzer_password", b"pw"),
)
_KEY_TO_FIELD = {key: name for name, key in FIELD_KEYS}


def pack_device_info(info: DeviceInfo) -> list[NdefRecord]:
    """Device info as records: URI first, one text record per set field."""
    records = [encode_uri(info.url)]
    for field_name, key in FIELD_KEYS:
        value = getattr(info, field_name)
        if value:
            records.append(encode_text(key.decode(), value))
    return records


def unpack_device_info(records: list[NdefRecord]) -> DeviceInfo:
    """Inverse of pack_device_info; unknown record keys are skipped."""
    url: str | None = None
    values: dict[str, str] = {}
    for rec in records:
        if _is_uri_record(rec):
            if url is not None:
                raise DuplicateField("second uri record")
            url = decode_uri(rec)
        elif rec.id in _KEY_TO_FIELD:
            name = _KEY_TO_FIELD[rec.id]
            if name in values:
                raise DuplicateField(name)
            values[name] = decode_text(rec)
    if url is None:
        raise MissingUrl("no uri record in message")
    return DeviceInfo(url=url, **values)


def encode_device_info(info: DeviceInfo) -> bytes:
    return encode_message(pack_device_info(info))


def decode_device_info(data: bytes) -> DeviceInfo:
    return unpack_device_info(decode_message(data))
