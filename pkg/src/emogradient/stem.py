"""Porter stemmer, implemented from the classic algorithm description.

Used by the METEOR stage-two matcher. Operates on single lowercase tokens;
tokens shorter than three letters are returned unchanged, as are tokens
containing characters outside a-z (stemming rules are undefined for them).
"""

from __future__ import annotations

_VOWELS = "aeiou"


def porter_stem(word: str) -> str:
    if len(word) <= 2 or not word.isascii() or not word.isalpha():
        return word

    b = word
    k = len(b) - 1  # index of last letter of the live region
    j = 0  # index of last letter of the stem, set by ends()

    def cons(i: int) -> bool:
        ch = b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not cons(i - 1)
        return True

    def measure() -> int:
        # number of VC sequences in b[0:j+1]
        n = 0
        i = 0
        while True:
            if i > j:
                return n
            if not cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > j:
                    return n
                if cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > j:
                    return n
                if not cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem() -> bool:
        return any(not cons(i) for i in range(j + 1))

    def double_cons(i: int) -> bool:
        if i < 1 or b[i] != b[i - 1]:
            return False
        return cons(i)

    def cvc(i: int) -> bool:
        # consonant-vowel-consonant ending, last consonant not w, x, or y;
        # signals a short stem like "hop" that takes back its silent e
        if i < 2 or not cons(i) or cons(i - 1) or not cons(i - 2):
            return False
        return b[i] not in "wxy"

    def ends(s: str) -> bool:
        nonlocal j
        n = len(s)
        if n > k + 1 or b[k - n + 1 : k + 1] != s:
            return False
        j = k - n
        return True

    def set_to(s: str) -> None:
        nonlocal b, k
        b = b[: j + 1] + s + b[j + 1 + len(s) :]
        k = j + len(s)

    def replace(s: str) -> None:
        if measure() > 0:
            set_to(s)

    # step 1a: plurals
    if b[k] == "s":
        if ends("sses"):
            k -= 2
        elif ends("ies"):
            set_to("i")
        elif b[k - 1] != "s":
            k -= 1

    # step 1b: -ed and -ing
    if ends("eed"):
        if measure() > 0:
            k -= 1
    elif (ends("ed") or ends("ing")) and vowel_in_stem():
        k = j
        if ends("at"):
            set_to("ate")
        elif ends("bl"):
            set_to("ble")
        elif ends("iz"):
            set_to("ize")
        elif double_cons(k):
            if b[k] not in "lsz":
                k -= 1
        elif measure() == 1 and cvc(k):
            j = k
            set_to("e")

    # step 1c: terminal y
    if ends("y") and vowel_in_stem():
        b = b[:k] + "i" + b[k + 1 :]

    # step 2: double suffixes, m > 0
    if k > 0:
        ch = b[k - 1]
        if ch == "a":
            if ends("ational"):
                replace("ate")
            elif ends("tional"):
                replace("tion")
        elif ch == "c":
            if ends("enci"):
                replace("ence")
            elif ends("anci"):
                replace("ance")
        elif ch == "e":
            if ends("izer"):
                replace("ize")
        elif ch == "l":
            if ends("bli"):
                replace("ble")
            elif ends("alli"):
                replace("al")
            elif ends("entli"):
                replace("ent")
            elif ends("eli"):
                replace("e")
            elif ends("ousli"):
                replace("ous")
        elif ch == "o":
            if ends("ization"):
                replace("ize")
            elif ends("ation"):
                replace("ate")
            elif ends("ator"):
                replace("ate")
        elif ch == "s":
            if ends("alism"):
                replace("al")
            elif ends("iveness"):
                replace("ive")
            elif ends("fulness"):
                replace("ful")
            elif ends("ousness"):
                replace("ous")
        elif ch == "t":
            if ends("aliti"):
                replace("al")
            elif ends("iviti"):
                replace("ive")
            elif ends("biliti"):
                replace("ble")
        elif ch == "g":
            if ends("logi"):
                replace("log")

    # step 3: -ic-, -full, -ness and friends
    ch = b[k]
    if ch == "e":
        if ends("icate"):
            replace("ic")
        elif ends("ative"):
            replace("")
        elif ends("alize"):
            replace("al")
    elif ch == "i":
        if ends("iciti"):
            replace("ic")
    elif ch == "l":
        if ends("ical"):
            replace("ic")
        elif ends("ful"):
            replace("")
    elif ch == "s":
        if ends("ness"):
            replace("")

    # step 4: bare suffixes, m > 1
    matched = False
    if k > 0:
        ch = b[k - 1]
        if ch == "a":
            matched = ends("al")
        elif ch == "c":
            matched = ends("ance") or ends("ence")
        elif ch == "e":
            matched = ends("er")
        elif ch == "i":
            matched = ends("ic")
        elif ch == "l":
            matched = ends("able") or ends("ible")
        elif ch == "n":
            matched = ends("ant") or ends("ement") or ends("ment") or ends("ent")
        elif ch == "o":
            matched = (ends("ion") and b[j] in "st") or ends("ou")
        elif ch == "s":
            matched = ends("ism")
        elif ch == "t":
            matched = ends("ate") or ends("iti")
        elif ch == "u":
            matched = ends("ous")
        elif ch == "v":
            matched = ends("ive")
        elif ch == "z":
            matched = ends("ize")
    if matched and measure() > 1:
        k = j

    # step 5a: drop a final e
    j = k
    if b[k] == "e":
        m = measure()
        if m > 1 or (m == 1 and not cvc(k - 1)):
            k -= 1
    # step 5b: -ll -> -l for long words
    if b[k] == "l" and double_cons(k):
        j = k  # measure() reads b[0:j+1]
        if measure() > 1:
            k -= 1

    return b[: k + 1]
