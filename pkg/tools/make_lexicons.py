#!/usr/bin/env python3
"""Build the weighted word lexicons that drive the surrogate corpora.

Word inventories are real Latvian and English word forms with rough
usage weights. Latvian weights are then nudged by iterative proportional
fitting so the emitted letter distribution matches documented language
statistics (top letters A and I, a heavy long-vowel share served by the
dead key on plain QWERTY, a small tail of rare accented letters).
Run from the repository root:  python tools/make_lexicons.py
"""

import os

HERE = os.path.dirname(os.path.abspath(__file__))
LEXDIR = os.path.join(HERE, "..", "src", "keylab", "data", "lexicons")

LATVIAN = {
    # function words
    "un": 3300, "ir": 2600, "es": 950, "tu": 420, "kas": 880, "ka": 1350,
    "ar": 1250, "uz": 800, "par": 780, "no": 950, "bet": 820, "kā": 760,
    "tā": 700, "to": 640, "tas": 680, "tad": 470, "jau": 430, "vai": 520,
    "pie": 440, "pēc": 310, "tikai": 300, "vēl": 390, "arī": 640, "lai": 430,
    "nav": 470, "bija": 850, "būs": 230, "būt": 240, "var": 340, "kad": 420,
    "ja": 380, "jo": 360, "gan": 300, "pat": 200, "vien": 180, "ne": 420,
    "nu": 240, "tik": 230, "cik": 140, "kur": 300, "tur": 260, "šeit": 120,
    "ko": 330, "kam": 90, "pret": 70, "pār": 60, "zem": 50, "virs": 40,
    "starp": 60, "bez": 90, "līdz": 160, "kopš": 40, "kamēr": 70, "kaut": 90,
    "it": 60, "nē": 90, "jā": 140, "jeb": 40, "nei": 30, "diez": 25,
    # pronouns
    "viņš": 560, "viņa": 600, "viņu": 280, "viņi": 230, "viņam": 170,
    "viņai": 120, "viņas": 200, "man": 330, "mani": 140, "manu": 90,
    "mans": 120, "mana": 100, "tev": 170, "tevi": 80, "sev": 90, "sevi": 70,
    "mēs": 300, "mums": 160, "jūs": 150, "jums": 110, "šis": 200, "šī": 170,
    "šo": 160, "šie": 110, "tie": 240, "tos": 120, "tām": 90, "tās": 180,
    "tam": 160, "tai": 110, "kāds": 150, "kāda": 130, "kādu": 100,
    "kurš": 70, "kura": 80, "kuru": 70, "kuri": 50, "kurā": 60, "šajā": 70,
    "šīs": 60, "šīm": 30, "šim": 30, "tiem": 110, "tajā": 80, "tanī": 30,
    "savā": 150, "savu": 160, "sava": 110, "savas": 80, "saviem": 50,
    "pats": 120, "pati": 90, "pašu": 60, "paša": 50, "sevī": 30,
    "visi": 170, "viss": 190, "visu": 160, "vairs": 150, "vairāk": 160,
    # nouns with case forms
    "laiks": 200, "laika": 160, "laikā": 210, "laiku": 120,
    "diena": 190, "dienas": 170, "dienā": 200, "dienu": 110,
    "gads": 170, "gada": 150, "gadā": 160, "gadu": 130, "gadus": 80,
    "cilvēks": 160, "cilvēki": 140, "cilvēku": 120, "cilvēka": 90,
    "roka": 90, "rokas": 110, "rokā": 130, "rokām": 80,
    "acis": 120, "acīm": 70, "galva": 100, "galvu": 90, "galvā": 110,
    "sirds": 90, "sirdī": 90, "māja": 150, "mājas": 170, "mājā": 180,
    "mājām": 70, "māte": 140, "mātes": 90, "tēvs": 150, "tēva": 100,
    "tēvu": 80, "dēls": 120, "dēla": 70, "meita": 90, "meitas": 70,
    "bērns": 110, "bērni": 130, "bērnu": 100, "bērniem": 80,
    "ūdens": 130, "ūdeni": 80, "ūdenī": 70, "zeme": 130, "zemes": 140,
    "zemē": 130, "ceļš": 120, "ceļa": 80, "ceļu": 100, "ceļā": 90,
    "vārds": 130, "vārdu": 110, "vārda": 80, "vārdā": 80, "vārdi": 70,
    "darbs": 150, "darba": 130, "darbu": 120, "darbā": 110,
    "vakars": 80, "vakarā": 130, "rīts": 70, "rītā": 100, "nakts": 90,
    "naktī": 90, "saule": 110, "saules": 70, "saulē": 60, "mežs": 90,
    "meža": 80, "mežā": 110, "lauks": 60, "laukā": 90, "istaba": 70,
    "istabā": 100, "logs": 60, "loga": 40, "durvis": 80, "durvīm": 50,
    "vieta": 100, "vietas": 80, "vietā": 130, "puse": 80, "pusē": 110,
    "brīdis": 80, "brīdī": 100, "reize": 70, "reizes": 90, "reizi": 110,
    "stunda": 60, "stundas": 70, "dzīve": 120, "dzīves": 90, "dzīvē": 100,
    "nauda": 90, "naudas": 70, "naudu": 80, "pilsēta": 70, "pilsētas": 60,
    "pilsētā": 80, "valsts": 80, "valstī": 50, "tauta": 60, "tautas": 70,
    "skola": 80, "skolas": 70, "skolā": 90, "grāmata": 80, "grāmatas": 60,
    "grāmatu": 70, "galds": 60, "galda": 40, "krēsls": 30, "zirgs": 70,
    "zirga": 50, "zirgu": 60, "zirgi": 40, "govs": 40, "suns": 70,
    "suņa": 30, "kaķis": 50, "kaķi": 30, "putns": 40, "putni": 50,
    "koks": 70, "koka": 60, "koki": 50, "kokiem": 30, "zāle": 50,
    "zāles": 40, "puķe": 25, "puķes": 35, "zieds": 30, "ziedi": 40,
    "ziema": 60, "ziemas": 50, "ziemā": 70, "vasara": 70, "vasaras": 60,
    "vasarā": 80, "pavasaris": 40, "rudens": 50, "rudenī": 40,
    "sniegs": 40, "lietus": 50, "vējš": 60, "vēja": 40, "saulīte": 30,
    "debesis": 40, "zvaigznes": 30, "mēness": 30, "gaisma": 40,
    "gaismas": 30, "tumsa": 30, "tumsā": 40, "uguns": 50, "uguni": 40,
    "ugunī": 20, "kungs": 90, "kunga": 60, "kundze": 50, "draugs": 70,
    "draugi": 60, "draugu": 50, "brālis": 60, "brāļa": 30, "māsa": 60,
    "māsas": 40, "puika": 40, "puikas": 30, "meitene": 60, "meitenes": 40,
    "zēns": 50, "zēni": 30, "vīrs": 120, "vīra": 70, "vīru": 60,
    "sieva": 100, "sievas": 80, "sievu": 50, "saimnieks": 80,
    "saimnieka": 60, "saimniece": 50, "kaimiņš": 40, "kaimiņi": 30,
    "ļaudis": 70, "ķēniņš": 60, "ķēniņa": 40, "ģimene": 60, "ģimenes": 40,
    "ozols": 30, "ogas": 20, "pļava": 20, "pļavā": 25, "žogs": 20,
    "čūska": 25, "fabrika": 12, "forma": 10, "himna": 8, "hercogs": 12,
    # verbs
    "teica": 160, "saka": 140, "sacīja": 130, "runā": 90, "runāja": 80,
    "iet": 180, "gāja": 170, "nāk": 120, "nāca": 130, "aiziet": 60,
    "aizgāja": 80, "atnāca": 70, "redz": 90, "redzēja": 120, "redzēt": 70,
    "zina": 110, "zināja": 90, "zināt": 60, "grib": 130, "gribēja": 120,
    "gribu": 90, "domā": 100, "domāja": 110, "dara": 80, "darīja": 90,
    "darīt": 80, "strādā": 90, "strādāja": 80, "stāv": 70, "stāvēja": 60,
    "sēž": 50, "sēdēja": 60, "gulēja": 60, "ēd": 40, "ēda": 50,
    "dzēra": 40, "ņem": 70, "ņēma": 90, "paņēma": 70, "deva": 90,
    "dod": 70, "lika": 80, "liek": 60, "sāka": 140, "sāk": 80,
    "sākt": 50, "beidza": 60, "palika": 90, "paliek": 70, "kļuva": 80,
    "šķiet": 90, "šķita": 70, "varēja": 150, "varētu": 90, "vajag": 100,
    "vajadzēja": 80, "nevar": 90, "nebija": 130, "nebūs": 50,
    "nezina": 40, "ļauj": 35, "ņems": 25, "dzīvo": 110, "dzīvoja": 90,
    "ieraudzīja": 50, "atbildēja": 70, "jautāja": 60, "prasīja": 50,
    "smējās": 40, "raudāja": 30, "klausījās": 30, "skatījās": 60,
    "izgāja": 40, "ienāca": 50, "uznāca": 20, "pienāca": 30,
    # adjectives and adverbs
    "labs": 90, "laba": 80, "labu": 70, "labi": 200, "liels": 100,
    "liela": 90, "lielu": 70, "lieli": 50, "mazs": 80, "maza": 70,
    "mazu": 60, "vecs": 90, "veca": 70, "vecais": 80, "jauns": 90,
    "jauna": 80, "jaunu": 60, "balts": 50, "balta": 40, "melns": 40,
    "melna": 30, "garš": 40, "gara": 30, "īss": 30, "īsa": 20,
    "skaists": 40, "skaista": 50, "laimīgs": 30, "grūti": 60,
    "viegli": 50, "ātri": 80, "lēni": 40, "klusi": 50, "skaļi": 30,
    "daudz": 170, "maz": 80, "ļoti": 190, "tiešām": 70, "gandrīz": 60,
    "varbūt": 90, "protams": 60, "tomēr": 150, "tāpēc": 110, "tātad": 60,
    "tagad": 220, "vēlāk": 70, "agri": 40, "vēlu": 50, "šodien": 110,
    "vakar": 70, "rīt": 50, "vienmēr": 90, "nekad": 80, "dažreiz": 50,
    "daži": 50, "dažas": 40, "dažādi": 30, "bieži": 60, "atkal": 130,
    "jauki": 40, "žēl": 60, "ātrāk": 40, "labāk": 90, "silts": 40,
    "silta": 30, "auksts": 40, "auksta": 30, "karsts": 30, "kopā": 90,
    "prom": 60, "iekšā": 50, "ārā": 90, "augšā": 50, "lejā": 40,
    "apkārt": 40, "priekšā": 50, "aizvien": 30, "turpat": 30,
    "čakls": 15, "ļauns": 25,
    # short everyday words rich in home-row letters
    "te": 200, "sen": 60, "nesen": 40, "tiesa": 50, "tiesas": 30,
    "satur": 25, "nes": 40, "nesa": 50, "nest": 25, "aste": 25,
    "ausis": 30, "siers": 25, "siena": 40, "sienas": 25, "strauts": 20,
    "trusis": 15, "tante": 30, "rati": 25, "ritenis": 15, "sauss": 20,
    "ienesa": 15, "tinte": 10, "tiesnesis": 10, "interese": 15,
    "interesanti": 15, "anna": 20, "ansis": 15, "rasa": 15, "siets": 8,
    "ausa": 8, "asins": 20, "asinis": 25,
    # numbers
    "viens": 90, "viena": 80, "vienu": 90, "divi": 80, "divas": 60,
    "trīs": 90, "četri": 40, "pieci": 40, "desmit": 50, "simts": 30,
    "pirmā": 50, "pirmais": 60, "otrs": 40, "otrā": 40,
}

ENGLISH = {
    "the": 4500, "of": 2400, "and": 2300, "a": 2100, "to": 1950, "in": 1500,
    "is": 1000, "was": 950, "he": 950, "that": 800, "it": 760, "his": 750,
    "on": 700, "with": 650, "as": 620, "i": 600, "for": 590, "had": 570,
    "you": 500, "not": 430, "be": 520, "her": 430, "at": 390, "by": 400,
    "which": 380, "have": 370, "or": 360, "from": 350, "this": 340,
    "him": 330, "she": 380, "they": 310, "all": 300, "were": 300,
    "but": 270, "are": 280, "we": 330, "when": 260, "your": 250,
    "can": 240, "said": 240, "there": 280, "what": 185, "out": 165, "would": 200,
    "so": 190, "up": 170, "then": 180, "them": 160, "some": 150,
    "into": 140, "time": 140, "now": 160, "little": 150, "no": 150,
    "do": 140, "could": 170, "my": 160, "one": 160, "like": 120,
    "over": 110, "did": 130, "me": 190, "will": 120, "if": 140,
    "than": 100, "been": 150, "who": 110, "more": 110, "an": 120,
    "their": 130, "get": 90, "got": 110, "see": 130, "know": 110,
    "just": 100, "down": 140, "about": 130, "boy": 90, "boys": 60,
    "old": 80, "good": 80, "come": 90, "came": 110, "go": 120, "went": 130,
    "say": 70, "says": 50, "way": 80, "day": 90, "night": 60, "house": 70,
    "water": 60, "river": 50, "hand": 60, "hands": 40, "head": 70,
    "eyes": 60, "face": 60, "long": 70, "great": 70, "well": 110,
    "back": 90, "off": 80, "away": 90, "again": 80, "here": 120,
    "never": 100, "after": 70, "before": 70, "very": 90, "man": 100,
    "men": 60, "other": 80, "two": 80, "three": 70, "first": 60,
    "last": 50, "while": 50, "where": 70, "why": 60, "how": 80,
    "through": 40, "around": 40, "thing": 50, "things": 60, "nothing": 50,
    "something": 60, "anything": 40, "everything": 30, "look": 60,
    "looked": 80, "looking": 40, "take": 50, "took": 70, "make": 60,
    "made": 80, "think": 70, "thought": 80, "felt": 40, "feel": 30,
    "found": 60, "find": 40, "give": 40, "gave": 50, "put": 60,
    "right": 70, "left": 50, "most": 50, "much": 80, "many": 60,
    "own": 40, "us": 60, "our": 50, "these": 60, "those": 50,
    "because": 60, "under": 40, "upon": 70, "every": 50, "once": 50,
    "still": 60, "even": 90, "new": 40, "always": 60, "together": 30,
    "began": 50, "toward": 20, "tom": 180, "huck": 60, "joe": 40,
    "aunt": 50, "polly": 40, "boys'": 5, "don't": 90, "it's": 80,
    "i'm": 60, "that's": 50, "didn't": 60, "wasn't": 40, "couldn't": 30,
    "he's": 30, "there's": 25, "you're": 25, "ain't": 40, "won't": 25,
    "she's": 15, "we'll": 15, "i'll": 30, "you'll": 15, "they're": 15,
    "cave": 30, "island": 30, "fence": 25, "church": 30, "school": 40,
    "whitewash": 10, "treasure": 25, "money": 40, "dead": 40, "body": 30,
    "sleep": 30, "asleep": 20, "morning": 50, "afternoon": 20,
    "summer": 20, "village": 25, "woods": 30, "heart": 40, "word": 40,
    "words": 40, "voice": 40, "told": 50, "tell": 60, "heard": 60,
    "hear": 40, "saw": 70, "soon": 50, "presently": 25, "moment": 40,
    "minute": 30, "minutes": 20, "hour": 25, "half": 30, "mile": 15,
    "home": 60, "door": 40, "window": 30, "floor": 20, "wall": 20,
    "road": 25, "street": 25, "town": 40, "place": 50, "boat": 20,
    "raft": 15, "dark": 30, "light": 40, "white": 40, "black": 30,
    "red": 25, "green": 15, "blue": 15, "poor": 30, "rich": 15,
    "true": 25, "sure": 40, "glad": 25, "afraid": 30, "tired": 20,
    "hungry": 15, "big": 40, "small": 25, "high": 30, "low": 15,
    "far": 40, "near": 30, "fast": 20, "slow": 10, "better": 40,
    "best": 30, "bad": 25, "worse": 10, "against": 25, "between": 30,
    "behind": 30, "along": 30, "across": 25, "without": 30, "within": 15,
    "almost": 30, "enough": 40, "quite": 30, "rather": 25, "really": 30,
    "perhaps": 30, "maybe": 25, "course": 30, "yes": 50, "oh": 60,
    "ah": 20, "hello": 10, "goodbye": 5, "please": 15, "thank": 15,
    "work": 40, "play": 30, "run": 30, "ran": 40, "walk": 20,
    "walked": 30, "jump": 15, "stood": 40, "stand": 25, "sat": 40,
    "sit": 25, "lay": 30, "lie": 20, "keep": 30, "kept": 30,
    "begin": 20, "start": 20, "started": 30, "stop": 25, "stopped": 30,
    "turn": 25, "turned": 50, "open": 30, "opened": 30, "close": 15,
    "closed": 20, "call": 25, "called": 50, "cry": 20, "cried": 40,
    "laugh": 20, "laughed": 30, "smile": 15, "want": 40, "wanted": 50,
    "need": 20, "try": 25, "tried": 40, "use": 20, "used": 40,
    "seem": 20, "seemed": 70, "let": 50, "leave": 25, "gone": 30,
    "done": 40, "being": 40, "having": 30, "going": 60, "coming": 30,
    "nobody": 25, "somebody": 30, "anybody": 25, "everybody": 30,
    "people": 50, "friend": 30, "friends": 30, "mother": 30,
    "father": 30, "sister": 15, "brother": 15, "children": 25,
    "woman": 25, "women": 15, "girl": 30, "girls": 20, "lady": 20,
    "king": 15, "judge": 20, "widow": 20, "teacher": 15, "master": 20,
}

TARGET_LETTERS = {
    "a": 11.85, "i": 9.33, "s": 7.59, "e": 6.50, "t": 5.72, "r": 5.33,
    "n": 5.03, "u": 4.51, "ā": 4.10, "k": 3.55, "ī": 3.38, "m": 3.20,
    "ē": 3.45, "l": 3.18, "d": 2.80, "p": 2.77, "v": 2.29, "o": 2.05,
    "z": 1.85, "š": 2.10, "j": 1.85, "b": 1.44, "g": 1.23, "c": 0.92,
    "ū": 0.62, "ņ": 0.56, "ļ": 0.41, "ž": 0.41, "ķ": 0.26, "č": 0.21,
    "ģ": 0.15, "h": 0.12, "f": 0.08,
}


def letter_shares(words: dict) -> dict:
    counts = {}
    total = 0
    for word, weight in words.items():
        for ch in word:
            counts[ch] = counts.get(ch, 0.0) + weight
            total += weight
    return {ch: c / total for ch, c in counts.items()}


def calibrate(words: dict, targets: dict, rounds: int = 300,
              damping: float = 0.5, clip: float = 3.0) -> dict:
    total_t = sum(targets.values())
    targets = {ch: v / total_t for ch, v in targets.items()}
    base = dict(words)
    current = dict(words)
    for _ in range(rounds):
        shares = letter_shares(current)
        ratio = {ch: targets[ch] / shares[ch] for ch in shares if ch in targets}
        for word, weight in current.items():
            m = 1.0
            for ch in word:
                m *= ratio.get(ch, 1.0) ** (1.0 / len(word))
            new = weight * (m ** damping)
            lo, hi = base[word] / clip, base[word] * clip
            current[word] = min(max(new, lo), hi)
    return current


def write(path: str, words: dict) -> None:
    lines = ["# word<TAB>weight  (generated by tools/make_lexicons.py)"]
    for word in sorted(words):
        lines.append(f"{word}\t{words[word]:.3f}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(words)} words)")


def main() -> None:
    os.makedirs(LEXDIR, exist_ok=True)
    calibrated = calibrate(LATVIAN, TARGET_LETTERS)
    write(os.path.join(LEXDIR, "latvian.tsv"), calibrated)
    write(os.path.join(LEXDIR, "english.tsv"), {w: float(c) for w, c in ENGLISH.items()})
    shares = letter_shares(calibrated)
    print("calibrated letter shares (top 12):")
    for ch in sorted(shares, key=shares.get, reverse=True)[:12]:
        print(f"  {ch}: {100 * shares[ch]:.2f}%")


if __name__ == "__main__":
    main()
