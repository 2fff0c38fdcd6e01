"""Reference payloads used for demonstrations and acceptance fixtures."""

# Antivirus test file string, 68 ASCII bytes.
EICAR = rb"X5O!P%@AP[4\PZX54(P^)7CC)7}$EICAR-STANDARD-ANTIVIRUS-TEST-FILE!$H+H*"

# Generic Test for Unsolicited Bulk Email, 68 ASCII bytes.
GTUBE = b"XJS*C4JDBQADN1.NSBN3*2IDNEN*GTUBE-STANDARD-ANTI-UBE-TEST-EMAIL*C.34X"

NSA_URL = b"https://www.nsa.gov/"
NASA_URL = b"https://www.nasa.gov/"

NAMED = {
    "eicar": EICAR,
    "gtube": GTUBE,
    "nsa": NSA_URL,
    "nasa": NASA_URL,
}
