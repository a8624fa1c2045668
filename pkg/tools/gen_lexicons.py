#!/usr/bin/env python3
"""Regenerate the bundled demo lexicons (deterministic).

Scores follow a Zipf-like per-million curve over a rank-ordered common-word
list; keys are run through the package lemmatizer so lookups hit. These are
stand-ins: swap in licensed frequency norms for production use.
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from draftcoach.textcore import lemmatize  # noqa: E402

RES = Path(__file__).resolve().parents[1] / "src" / "draftcoach" / "resources"

# rank-ordered: function words first, then common general/academic vocabulary
WORDS = """
the be to of and a in that have i it for not on with he as you do at this but
his by from they we say her she or an will my one all would there their what
so up out if about who get which go me when make can like time no just him
know take people into year your good some could them see other than then now
look only come its over think also back after use two how our work first well
way even new want because any these give day most us is was are were been has
had did does doing being having
many before must through down should still such here off while last might
great old year part place same right small large next early young few long
own under never another too between each both again found study result method
data model research paper system approach analysis experiment test measure
show find provide include report describe propose present compare evaluate
increase reduce improve change effect problem question answer evidence sample
group control case value level rate number percent average total high low
significant different similar common general specific particular important
main key major minor final initial current previous recent early late whole
single several various across within without during against toward among
field area domain task process stage step phase section paragraph sentence
word text document abstract introduction summary draft feedback quality
structure pattern feature score weight measure metric baseline threshold
training learning classifier label class category type kind form example
instance set list table figure line point range limit bound error loss gain
accuracy precision recall performance speed cost budget resource capacity
power energy signal noise source target input output response request service
user student writer reader author teacher expert novice participant patient
child adult worker team member community population city country region site
location network node edge graph tree path distance length size depth height
width volume mass weight temperature pressure flow rate speed velocity force
water air soil land ocean river forest plant animal species cell gene protein
tissue blood brain heart bone muscle disease health treatment therapy drug
dose trial clinic hospital doctor nurse care risk benefit harm safety danger
machine device sensor camera engine motor battery circuit chip memory storage
software hardware program code function variable parameter algorithm compute
language speech sound voice image video picture color light dark bright
school class course lesson exam grade book page chapter note letter report
money price market trade product company business industry economy policy
government law rule standard guideline requirement condition constraint
design build develop create construct implement deploy maintain operate
collect gather record observe monitor track detect identify recognize
classify predict estimate infer conclude suggest indicate demonstrate
confirm verify validate support reject accept assume expect require need
help allow enable prevent avoid cause lead result follow precede depend
relate connect link combine merge split divide separate join attach remove
add subtract multiply count sum mean median variance deviation distribution
strong weak fast slow hard soft easy difficult simple complex clear unclear
possible impossible likely unlikely true false correct wrong valid invalid
full empty open closed public private local global internal external
"""


def ranked_words() -> list[str]:
    seen = []
    for word in WORDS.split():
        if word not in seen:
            seen.append(word)
    return seen


def write_lexicon(path: Path, scale: float, exponent: float, header: str) -> None:
    rows: dict[str, float] = {}
    for rank, word in enumerate(ranked_words(), start=1):
        lemma = lemmatize(word)
        score = round(scale / rank**exponent, 3)
        # first (most frequent) occurrence of a lemma wins
        rows.setdefault(lemma, score)
    lines = [header]
    lines += [f"{lemma}\t{score}" for lemma, score in rows.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(rows)} entries)")


def main() -> None:
    write_lexicon(
        RES / "lexicon_spoken.tsv",
        scale=52000.0,
        exponent=1.05,
        header="# demo spoken-style frequency lexicon (per-million-like scores); regenerate via tools/gen_lexicons.py",
    )
    write_lexicon(
        RES / "lexicon_subtlex.tsv",
        scale=38000.0,
        exponent=0.95,
        header="# demo subtitle-style frequency lexicon (per-million-like scores); regenerate via tools/gen_lexicons.py",
    )


if __name__ == "__main__":
    main()
