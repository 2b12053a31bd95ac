#!/usr/bin/env python3
"""Generate the bundled test corpora deterministically.

Writes the per-language sample corpus, the 500-line multilingual parity
corpus, the 1000-line binding corpus, and the pretokenizer torture inputs.
Word banks are embedded here so the corpora are redistributable; lines are
composed with a fixed seed so regeneration is byte-stable.
"""

import json
import random
import sys
from pathlib import Path

SHORT = {
    "en": ["the", "a", "an", "of", "to", "in", "is", "was", "and", "for",
           "on", "at", "by", "we", "he", "she", "it", "not", "but", "all"],
    "tr": ["ve", "bir", "bu", "şu", "o", "da", "de", "ki", "ne", "çok",
           "az", "iyi", "ev", "su", "göz", "gün", "yol", "iş", "dil", "kol"],
    "fi": ["ja", "on", "ei", "se", "hän", "me", "te", "he", "nyt", "kun",
           "vain", "vesi", "maa", "työ", "käsi", "pää", "yö", "tie", "suu", "puu"],
    "id": ["dan", "di", "ke", "itu", "ini", "ada", "apa", "dua", "saya",
           "kamu", "kita", "buku", "air", "hari", "baik", "satu", "lima", "kota", "desa", "raja"],
    "sw": ["na", "ya", "wa", "ni", "kwa", "sisi", "yeye", "leo", "maji",
           "jua", "moto", "mti", "saa", "siku", "chai", "mtu", "njia", "kazi", "dawa", "gari"],
    "et": ["ja", "on", "ei", "ta", "me", "see", "üks", "kaks", "vesi",
           "maa", "töö", "käsi", "pea", "öö", "tee", "suu", "puu", "kool", "linn", "aeg"],
    "ta": ["naan", "nee", "adhu", "idhu", "oru", "illa", "aama", "inge",
           "ange", "ippo", "appo", "yaar", "enna", "veedu", "thanni", "kai", "kan", "oor", "naal", "paal"],
}

MEDIUM = {
    "en": ["morning", "village", "teacher", "station", "question", "problem",
           "evening", "library", "picture", "country", "history", "silence"],
    "tr": ["kitap", "okul", "insan", "şehir", "zaman", "deniz", "güneş",
           "çocuk", "kalem", "pencere", "sabah", "akşam"],
    "fi": ["kirja", "koulu", "ihminen", "kaupunki", "aika", "meri",
           "aurinko", "lapsi", "kynä", "ikkuna", "aamu", "ilta"],
    "id": ["sekolah", "manusia", "matahari", "jendela", "pensil", "malam",
           "pagi", "sore", "rumah", "kantor", "pantai", "gunung"],
    "sw": ["shule", "mwalimu", "kitabu", "dirisha", "kalamu", "asubuhi",
           "jioni", "nyumba", "ofisi", "pwani", "mlima", "mwezi"],
    "et": ["raamat", "õpetaja", "inimene", "päike", "aken", "pliiats",
           "hommik", "õhtu", "maja", "kontor", "rand", "mägi"],
    "ta": ["pallikoodam", "aasiriyar", "puthagam", "jannal", "pencilu",
           "kaalai", "maalai", "veedugal", "aluvalagam", "kadarkarai", "malai", "nilavu"],
}

LONG = {
    "en": ["policymakers", "skyscanner", "understanding", "breakthrough",
           "extraordinary", "international", "counterintuitive", "straightforward",
           "notwithstanding", "troubleshooting", "cryptocurrency", "backpropagation",
           "weatherproofing", "bookkeeping", "nevertheless", "handwriting",
           "motherboard", "screenwriting", "lighthousekeeper", "watchmaker"],
    "tr": ["yükselme", "katacaklarından", "işbirliği", "öğretmenlik",
           "kütüphanede", "anlaşılabilir", "gerçekleştirme", "düşüncelerimden",
           "konuşmalarında", "hazırlanıyorlar", "karşılaştırma", "geliştirdiğimiz",
           "uluslararası", "sorumluluklarını", "değerlendirme", "yapabileceğimiz",
           "arkadaşlarımızla", "üniversitelerde", "bilgisayarlarda", "çalışmalarımız"],
    "fi": ["fotosynteesille", "kokonaisuudesta", "kirjastoissa", "opiskelijoiden",
           "mahdollisuuksia", "yhteiskunnassa", "tietokoneohjelma", "lentokentällä",
           "rakennuksessa", "ymmärtäminen", "kehittämiseen", "työskentelemme",
           "kansainvälinen", "luonnontieteet", "puheenjohtaja", "sairaalassa",
           "ravintolassa", "keskustelussa", "järjestelmässä", "ateriakokonaisuudesta"],
    "id": ["mungkinkah", "pembangunan", "kesempatan", "memberikan",
           "pemerintahan", "keberhasilan", "mempertimbangkan", "pengembangan",
           "kemungkinan", "berkelanjutan", "mengidentifikasi", "tanggungjawab",
           "kebijaksanaan", "perpustakaan", "menggambarkan", "pembelajaran",
           "keanekaragaman", "mempresentasikan", "ketidakpastian", "penyelenggaraan"],
    "sw": ["wanafunzi", "kujifunza", "maendeleo", "wanasayansi",
           "tunawasiliana", "wanapofanya", "uchunguzi", "ushirikiano",
           "wanaofanya", "kuendeleza", "wanaposoma", "tunapokwenda",
           "kiswahili", "mazingira", "uwezekano", "wanariadha",
           "tunafurahia", "wanakijiji", "utamaduni", "mapinduzi"],
    "et": ["raamatukogudes", "ülikoolides", "töötamine", "arvutiteadus",
           "keskkonnakaitse", "ettevõtlus", "ühiskonnas", "võimalused",
           "rahvusvaheline", "õpilastele", "teadusuuringud", "arusaamine",
           "tehnoloogia", "kirjandusest", "majandusteadus", "läbirääkimised",
           "iseseisvus", "vabadusvõitlus", "looduskaitse", "haridussüsteem"],
    "ta": ["puriyavillai", "yendravudan", "kondirukkiren", "paarthukonden",
           "solliyirukken", "poirukkiraan", "vandhirukkaanga", "padichirukken",
           "nadandhirukku", "yosichirukken", "sandhoshama", "kashtapadren",
           "velaiseiyren", "sonnaangala", "kettukonden", "nenachirunden",
           "paathukalaam", "mudinjiruchu", "thirumbivandhen", "ezhudhinen"],
}

EXTRA_LINES = [
    "Москва и Санкт-Петербург соединены железной дорогой.",
    "Η γλώσσα είναι το εργαλείο της σκέψης μας.",
    "اللغة العربية من أكثر اللغات انتشاراً في العالم.",
    "השפה העברית נכתבת מימין לשמאל.",
    "भाषा विचारों को व्यक्त करने का माध्यम है।",
    "மொழி என்பது எண்ணங்களின் வெளிப்பாடு ஆகும்.",
    "语言是思想的载体，也是文化的桥梁。",
    "言語は思考の道具であり、文化の懸け橋でもある。",
    "언어는 생각의 도구이며 문화의 다리입니다.",
    "ภาษาเป็นเครื่องมือของความคิดและสะพานของวัฒนธรรม",
    "🌍🌎🌏 emoji lines 🎉 with 🚀 symbols 🤖 and 👩‍🔬 sequences",
    "mixed scripts: English العربية 中文 русский தமிழ்한국어",
    "numbers 1 12 123 1234 12345 and fractions ½ ¾ and ١٢٣ and १२३",
    "punctuation!!! ... --- ??? ;;; ((())) [[[]]] {{}} <<>>",
    "   leading spaces and trailing spaces   ",
    "tabs\tbetween\twords\tand  double  spaces",
    "contractions: don't can't I'll we're they've she'd it's y'all",
    "CamelCase PascalCase snake_case kebab-case SCREAMING_CASE",
    "code: for (int i = 0; i < n; ++i) { total += weights[i] * x; }",
    "urls: https://example.org/path?query=value&flag=1#fragment",
    "emails: someone@example.org and quoted \"strings\" plus 'single'",
    "currency: $100, €250.75, £9.99, ¥1000, ₺42, ₹7, 100₫",
    "math: ∑ xᵢ ≈ ∫ f(x) dx ± ε, α β γ δ, x² + y³ = z⁴",
    "Straße, Größe, Füße — German sharp s and umlauts öäü ÖÄÜ",
    "İstanbul'da ılık bir gün; dotless ı and dotted İ both appear.",
]


def make_lines(rng: random.Random, lang: str, n_lines: int) -> list[str]:
    short, medium, long_ = SHORT[lang], MEDIUM[lang], LONG[lang]
    lines = []
    for _ in range(n_lines):
        n_words = rng.randint(5, 11)
        words = []
        for _ in range(n_words):
            bucket = rng.random()
            if bucket < 0.58:
                words.append(rng.choice(short))
            elif bucket < 0.85:
                words.append(rng.choice(medium))
            else:
                words.append(rng.choice(long_))
        line = " ".join(words)
        if rng.random() < 0.3:
            line = line.capitalize() + rng.choice([".", "?", "!", "..."])
        if rng.random() < 0.15:
            line += f" {rng.randint(1, 2099)}"
        lines.append(line)
    return lines


TORTURE = [
    "policymakers",
    "a b",
    "",
    " ",
    "   ",
    "hello world",
    "Hello, World!",
    "don't",
    "I'LL BE THERE",
    "they'rE going",
    "it's 1234567 items",
    "x1 x12 x123 x1234",
    "£3.141592653589793",
    "  spaced   out  ",
    "line one\nline two",
    "crlf\r\nline",
    "many\n\n\nnewlines\n",
    "tabs\tandvertical",
    "nbsp space and em space",
    "zero​width and soft­hyphen",
    "bom﻿middle",
    "nextline and fschar",
    "ideographic　space",
    "İstanbul ılık ğüşöç",
    "straße GRÖSSE",
    "čeština žlutý kůň",
    "ελληνικά Γλώσσα",
    "русский ЯЗЫК тест",
    "العربية النص",
    "עברית טקסט",
    "हिन्दी भाषा परीक्षण",
    "தமிழ் மொழி",
    "中文没有空格的句子很长",
    "日本語のテキストです",
    "한국어 텍스트 테스트",
    "ภาษาไทยไม่มีช่องว่าง",
    "emoji 🎉 test 🚀🚀",
    "family 👨‍👩‍👧‍👦 flag 🇹🇷",
    "math 𝕏 + 𝑦 = ℤ",
    "gothic 𐌰𐌱𐌲 letters",
    "combining áë marks",
    "devanagari क्षत्रिय संयुक्त",
    "fractions ½ ¾ ⅞ and ² ³",
    "devanagari digits १२३४",
    "arabic digits ١٢٣ mixed 123",
    "mixed中文and English",
    "кирилицаlatinmix",
    "!!!???...,,,;;;:::",
    "(parens) [brackets] {braces} <angles>",
    "quotes \"double\" 'single' «guillemets» „low”",
    "dashes - – — and underscores _ __",
    "a.b.c.d.e emails x@y.z",
    "http://a.b/c?d=e&f=g#h",
    "trailing spaces   \nnext",
    "\nleading newline",
    "CRLF only\r\n",
    "\r\n",
    "single '",
    "'s at start",
    "ends with '",
    "ALL CAPS SENTENCE HERE",
    "hyphen-ated co-operation re-enter",
    "under_scores between_words",
    "camelCaseWords and PascalCaseWords",
]


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data")
    sample_dir = out_dir / "sample_corpus"
    sample_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240917)
    langs = ("en", "tr", "fi", "id", "sw", "et", "ta")
    per_lang = {}
    for lang in langs:
        lines = make_lines(rng, lang, 70)
        per_lang[lang] = lines
        (sample_dir / f"{lang}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    parity: list[str] = []
    for lang in langs:
        parity.extend(per_lang[lang][:55])
    parity.extend(EXTRA_LINES)
    parity.extend(t for t in TORTURE if "\n" not in t and "\r" not in t and t.strip())
    i = 0
    while len(parity) < 500:
        parity.extend(make_lines(rng, langs[i % len(langs)], 6))
        i += 1
    rng.shuffle(parity)
    parity = parity[:500]
    assert len(parity) == 500, len(parity)
    (out_dir / "parity_corpus.txt").write_text("\n".join(parity) + "\n", encoding="utf-8")

    binding = list(parity)
    for lang in langs:
        binding.extend(make_lines(rng, lang, 60))
    binding.extend(EXTRA_LINES)
    i = 0
    while len(binding) < 1000:
        binding.extend(make_lines(rng, langs[i % len(langs)], 6))
        i += 1
    rng.shuffle(binding)
    binding = binding[:1000]
    assert len(binding) == 1000, len(binding)
    (out_dir / "binding_corpus.txt").write_text("\n".join(binding) + "\n", encoding="utf-8")

    (out_dir / "pretoken_torture.json").write_text(
        json.dumps(TORTURE, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    total = sum(len(line.encode()) for line in parity)
    print(f"sample corpus: {len(langs)} languages x 70 lines; "
          f"parity 500 lines ({total} bytes); binding 1000 lines")
    return 0


if __name__ == "__main__":
    sys.exit(main())
