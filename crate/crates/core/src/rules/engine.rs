//! The rule engine.
//!
//! Every rule is a pattern over a window of at most six tokens either side
//! of its anchor. Each token is first reduced to a `u64` of lexical flags
//! (one hash lookup), then the rules run as plain tag/flag comparisons.
//! Clause boundaries are approximated by punctuation tokens and the start of
//! the document.

use std::collections::HashMap;

use crate::types::{FeatureId, FeatureSet, PennTag, TagAnnotation, Token};

use super::wordlists::WordLists;

/// Largest distance between an anchor and any token its rules inspect.
pub const WINDOW: usize = 6;

mod flag {
    pub const PLACE: u64 = 1 << 0;
    pub const TIME: u64 = 1 << 1;
    pub const INPR: u64 = 1 << 2;
    pub const DWNT: u64 = 1 << 3;
    pub const AMP: u64 = 1 << 4;
    pub const DPAR: u64 = 1 << 5;
    pub const PUBV: u64 = 1 << 6;
    pub const PRIV: u64 = 1 << 7;
    pub const SUAV: u64 = 1 << 8;
    pub const SMP: u64 = 1 << 9;
    pub const CONJ1: u64 = 1 << 10;
    pub const QUAN: u64 = 1 << 11;
    pub const QUPR: u64 = 1 << 12;
    pub const LAUGH: u64 = 1 << 13;
    pub const EMOT: u64 = 1 << 14;
    pub const WH: u64 = 1 << 15;
    pub const NEMD: u64 = 1 << 16;
    pub const POMD: u64 = 1 << 17;
    pub const PRMD: u64 = 1 << 18;
    pub const PREPL: u64 = 1 << 19;
    pub const SUBORD: u64 = 1 << 20;
    pub const OSUB1: u64 = 1 << 21;
    pub const BE: u64 = 1 << 22;
    pub const HAVE: u64 = 1 << 23;
    pub const DO: u64 = 1 << 24;
    pub const FPP1: u64 = 1 << 25;
    pub const SPP2: u64 = 1 << 26;
    pub const TPP3: u64 = 1 << 27;
    pub const PIT: u64 = 1 << 28;
    pub const DEM: u64 = 1 << 29;
    pub const WHP: u64 = 1 << 30;
    pub const NEG: u64 = 1 << 31;
    pub const CONTR: u64 = 1 << 32;
    pub const SUBJ: u64 = 1 << 33;
    pub const ACC: u64 = 1 << 34;
    pub const ASKTELL: u64 = 1 << 36;
    pub const SEEM: u64 = 1 << 37;
    pub const ART: u64 = 1 << 38;
    pub const INDA: u64 = 1 << 39;
    pub const CLAUSE_CONJ: u64 = 1 << 40;
    // first word of a multi-word entry in the given list
    pub const M_OSUB: u64 = 1 << 41;
    pub const M_CONJ: u64 = 1 << 42;
    pub const M_HDG: u64 = 1 << 43;
    pub const M_EMPH: u64 = 1 << 44;
    pub const SYNE: u64 = 1 << 46;
    pub const BY: u64 = 1 << 47;
    pub const THAT: u64 = 1 << 48;
    pub const AND: u64 = 1 << 49;
    pub const TO: u64 = 1 << 50;
    pub const WHICH: u64 = 1 << 51;
    pub const RATHER: u64 = 1 << 52;
    pub const REAL_SO: u64 = 1 << 53;
    pub const SORT_KIND: u64 = 1 << 54;
    pub const CAUS: u64 = 1 << 55;
    pub const CONC: u64 = 1 << 56;
    pub const COND: u64 = 1 << 57;
    pub const SOON: u64 = 1 << 58;
    pub const AS: u64 = 1 << 59;
    pub const SO_SUCH: u64 = 1 << 60;
    pub const PRP_PRON: u64 = 1 << 61;
    pub const YOU_IT: u64 = 1 << 62;
    pub const THERE: u64 = 1 << 63;

    pub const VERB_LIST: u64 = PUBV | PRIV | SUAV;
    // words that open a new clause after "and": WH words, adverbial
    // subordinators, discourse particles, conjuncts
    pub const CLAUSE_WORD: u64 = WH | CAUS | CONC | COND | OSUB1 | DPAR | CONJ1;
}

const CLOSED_CLASS: &[(&str, u64)] = {
    use flag::*;
    &[
        ("i", FPP1 | SUBJ),
        ("me", FPP1 | ACC),
        ("my", FPP1),
        ("mine", FPP1 | PRP_PRON),
        ("myself", FPP1),
        ("we", FPP1 | SUBJ),
        ("us", FPP1 | ACC),
        ("our", FPP1),
        ("ours", FPP1 | PRP_PRON),
        ("ourselves", FPP1),
        ("you", SPP2 | YOU_IT),
        ("your", SPP2),
        ("yours", SPP2 | PRP_PRON),
        ("yourself", SPP2),
        ("yourselves", SPP2),
        ("he", TPP3 | SUBJ),
        ("she", TPP3 | SUBJ),
        ("they", TPP3 | SUBJ),
        ("him", TPP3 | ACC),
        ("her", TPP3),
        ("them", TPP3 | ACC),
        ("his", TPP3),
        ("their", TPP3),
        ("hers", TPP3 | PRP_PRON),
        ("theirs", TPP3 | PRP_PRON),
        ("himself", TPP3),
        ("herself", TPP3),
        ("themselves", TPP3),
        ("it", PIT | YOU_IT),
        ("its", PIT),
        ("itself", PIT),
        ("this", DEM),
        ("that", DEM | THAT),
        ("these", DEM),
        ("those", DEM),
        ("who", WHP),
        ("whom", WHP | ACC),
        ("whose", WHP),
        ("which", WHP | WHICH),
        ("not", NEG),
        ("n't", NEG | CONTR),
        ("'ll", CONTR),
        ("'re", CONTR | BE),
        ("'ve", CONTR | HAVE),
        ("'m", CONTR | BE),
        ("'d", CONTR),
        ("be", BE),
        ("am", BE),
        ("is", BE),
        ("are", BE),
        ("was", BE),
        ("were", BE),
        ("been", BE),
        ("being", BE),
        ("have", HAVE),
        ("has", HAVE),
        ("had", HAVE),
        ("having", HAVE),
        ("do", DO),
        ("does", DO),
        ("did", DO),
        ("ask", ASKTELL),
        ("asks", ASKTELL),
        ("asked", ASKTELL),
        ("asking", ASKTELL),
        ("tell", ASKTELL),
        ("tells", ASKTELL),
        ("told", ASKTELL),
        ("telling", ASKTELL),
        ("the", ART),
        ("a", ART | INDA),
        ("an", ART | INDA),
        ("and", AND | CLAUSE_CONJ),
        ("nor", CLAUSE_CONJ | SYNE),
        ("but", CLAUSE_CONJ),
        ("or", CLAUSE_CONJ),
        ("also", CLAUSE_CONJ),
        ("no", SYNE),
        ("neither", SYNE),
        ("by", BY),
        ("to", TO),
        ("rather", RATHER),
        ("else", RATHER),
        ("altogether", RATHER),
        ("real", REAL_SO),
        ("so", REAL_SO | SO_SUCH),
        ("such", SO_SUCH),
        ("sort", SORT_KIND),
        ("kind", SORT_KIND),
        ("because", CAUS),
        ("although", CONC),
        ("though", CONC),
        ("tho", CONC),
        ("if", COND),
        ("unless", COND),
        ("soon", SOON),
        ("as", AS),
        ("there", THERE),
    ]
};

/// One multi-word (or single-word) list, longest entries first.
#[derive(Debug, Clone)]
struct Phrases {
    entries: Vec<Vec<String>>,
    max_len: usize,
}

impl Phrases {
    fn new(list: &[String]) -> Phrases {
        let mut entries: Vec<Vec<String>> = list
            .iter()
            .map(|e| e.split(' ').map(str::to_string).collect())
            .collect();
        entries.sort_by(|a: &Vec<String>, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let max_len = entries.iter().map(Vec::len).max().unwrap_or(1);
        Phrases { entries, max_len }
    }

    /// Length of the longest entry matching at `i`, or 0.
    fn longest_at(&self, tokens: &[Token], i: usize) -> usize {
        self.entries
            .iter()
            .find(|e| {
                i + e.len() <= tokens.len()
                    && e.iter().zip(&tokens[i..]).all(|(w, t)| *w == t.lower)
            })
            .map_or(0, Vec::len)
    }
}

/// Compiled rule set. Immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct Engine {
    lists: WordLists,
    lexical: HashMap<String, u64>,
    osub: Phrases,
    conj: Phrases,
    hedges: Phrases,
    emph: Phrases,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(WordLists::builtin())
    }
}

struct Cx<'a> {
    toks: &'a [Token],
    flags: Vec<u64>,
    osub: Vec<bool>,
    conj: Vec<bool>,
    hdg: Vec<bool>,
    emph: Vec<bool>,
}

impl Cx<'_> {
    fn tag(&self, k: isize) -> Option<PennTag> {
        usize::try_from(k).ok().and_then(|k| self.toks.get(k)).map(|t| t.pos)
    }

    fn has(&self, k: isize, f: u64) -> bool {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.flags.get(k))
            .is_some_and(|&x| x & f != 0)
    }

    fn tag_is(&self, k: isize, p: impl Fn(PennTag) -> bool) -> bool {
        self.tag(k).is_some_and(p)
    }

    fn verb(&self, k: isize) -> bool {
        self.tag_is(k, PennTag::is_verb)
    }

    fn be(&self, k: isize) -> bool {
        self.verb(k) && (self.has(k, flag::BE) || self.lower(k) == Some("'s"))
    }

    fn have(&self, k: isize) -> bool {
        self.verb(k) && (self.has(k, flag::HAVE) || self.lower(k) == Some("'d"))
    }

    fn do_(&self, k: isize) -> bool {
        self.verb(k) && self.has(k, flag::DO)
    }

    fn aux(&self, k: isize) -> bool {
        self.tag(k) == Some(PennTag::Md) || self.be(k) || self.have(k) || self.do_(k)
    }

    fn lower(&self, k: isize) -> Option<&str> {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.toks.get(k))
            .map(|t| t.lower.as_str())
    }

    fn punct(&self, k: isize) -> bool {
        self.tag(k) == Some(PennTag::Punct)
    }

    /// Document start or a punctuation token at `k`.
    fn boundary(&self, k: isize) -> bool {
        k < 0 || self.punct(k)
    }

    fn adverb(&self, k: isize) -> bool {
        self.tag_is(k, PennTag::is_adverb)
    }

    fn adverb_not_neg(&self, k: isize) -> bool {
        self.adverb(k) && !self.has(k, flag::NEG)
    }

    /// First position after `k` that is not an adverb, skipping at most two.
    fn skip_adverbs(&self, k: isize, neg_ok: bool) -> isize {
        let mut j = k + 1;
        for _ in 0..2 {
            let skip = if neg_ok { self.adverb(j) } else { self.adverb_not_neg(j) };
            if skip {
                j += 1;
            } else {
                break;
            }
        }
        j
    }

    /// Nearest position before `k` that is not an adverb, skipping at most two.
    fn back_over_adverbs(&self, k: isize) -> isize {
        let mut j = k - 1;
        for _ in 0..2 {
            if self.adverb(j) {
                j -= 1;
            } else {
                break;
            }
        }
        j
    }

    fn noun(&self, k: isize) -> bool {
        self.tag_is(k, PennTag::is_noun)
    }

    fn adj(&self, k: isize) -> bool {
        self.tag_is(k, PennTag::is_adjective)
    }

    fn verb_list_verb(&self, k: isize) -> bool {
        self.verb(k) && self.has(k, flag::VERB_LIST)
    }
}

fn is_laugh(w: &str) -> bool {
    // "haha", "hehehe", ...: two or more repeats of one syllable
    let b = w.as_bytes();
    b.len() >= 4
        && b.len() % 2 == 0
        && (b.chunks(2).all(|p| p == b"ha") || b.chunks(2).all(|p| p == b"he"))
}

fn is_nominalization(w: &str) -> bool {
    let n = w.chars().count();
    ["tion", "tions", "ment", "ments", "ness", "nesses", "ity", "ities"]
        .iter()
        .any(|s| w.ends_with(s) && n >= s.len() + 2)
}

fn is_gerund_form(w: &str) -> bool {
    w.chars().count() >= 10 && (w.ends_with("ing") || w.ends_with("ings"))
}

const QUOTES: &[&str] = &["\"", "\u{201C}", "\u{201D}", "``", "''", "'", "\u{2018}", "\u{2019}"];
const SERE_PUNCT: &[&str] = &[",", ";", "-", "--", "\u{2013}", "\u{2014}"];
const CLAUSE_PUNCT: &[&str] = &[".", "!", "?", ";", ":"];

impl Engine {
    pub fn new(lists: WordLists) -> Engine {
        let mut lexical: HashMap<String, u64> = HashMap::new();
        let mut add = |w: &str, f: u64| *lexical.entry(w.to_string()).or_default() |= f;
        for (w, f) in CLOSED_CLASS {
            add(w, *f);
        }
        let singles: [(&[String], u64); 20] = [
            (&lists.place_adverbials, flag::PLACE),
            (&lists.time_adverbials, flag::TIME),
            (&lists.indefinite_pronouns, flag::INPR),
            (&lists.downtoners, flag::DWNT),
            (&lists.amplifiers, flag::AMP),
            (&lists.discourse_particles, flag::DPAR),
            (&lists.conjuncts, flag::CONJ1),
            (&lists.quantifiers, flag::QUAN),
            (&lists.quantifier_pronouns, flag::QUPR),
            (&lists.laughter_acronyms, flag::LAUGH),
            (&lists.emoticons, flag::EMOT),
            (&lists.wh_words, flag::WH),
            (&lists.necessity_modals, flag::NEMD),
            (&lists.possibility_modals, flag::POMD),
            (&lists.predictive_modals, flag::PRMD),
            (&lists.prepositions, flag::PREPL),
            (&lists.subordinators, flag::SUBORD),
            (&lists.other_subordinators, flag::OSUB1),
            (&lists.hedges, 0),
            (&lists.emphatics, 0),
        ];
        for (list, f) in singles {
            for e in list {
                if !e.contains(' ') {
                    add(e, f);
                }
            }
        }
        // multi-word starts; single-word entries of these lists also start a match
        for (list, f) in [
            (&lists.other_subordinators, flag::M_OSUB),
            (&lists.conjuncts, flag::M_CONJ),
            (&lists.hedges, flag::M_HDG),
            (&lists.emphatics, flag::M_EMPH),
        ] {
            for e in list {
                add(e.split(' ').next().unwrap(), f);
            }
        }
        for (list, f) in [
            (&lists.public_verbs, flag::PUBV),
            (&lists.private_verbs, flag::PRIV),
            (&lists.suasive_verbs, flag::SUAV),
            (&lists.seem_appear, flag::SMP | flag::SEEM),
        ] {
            for form in WordLists::verb_forms_of(list) {
                add(&form, f);
            }
        }
        Engine {
            osub: Phrases::new(&lists.other_subordinators),
            conj: Phrases::new(&lists.conjuncts),
            hedges: Phrases::new(&lists.hedges),
            emph: Phrases::new(&lists.emphatics),
            lexical,
            lists,
        }
    }

    pub fn lists(&self) -> &WordLists {
        &self.lists
    }

    pub fn annotate(&self, doc_id: &str, tokens: &[Token]) -> TagAnnotation {
        TagAnnotation::new(doc_id, self.fire(tokens))
    }

    /// Fired countable features per token position.
    pub fn fire(&self, tokens: &[Token]) -> Vec<FeatureSet> {
        let flags: Vec<u64> = tokens
            .iter()
            .map(|t| self.lexical.get(t.lower.as_str()).copied().unwrap_or(0))
            .collect();
        let mut cx = Cx {
            toks: tokens,
            flags,
            osub: Vec::new(),
            conj: Vec::new(),
            hdg: Vec::new(),
            emph: Vec::new(),
        };
        cx.osub = self.phrase_matches(&cx, &self.osub, flag::M_OSUB, |cx, i, len| {
            // "so that" / "such that" before a noun or adjective is a result clause
            !(len == 2
                && cx.has(i, flag::SO_SUCH)
                && cx.has(i + 1, flag::THAT)
                && (cx.noun(i + 2) || cx.adj(i + 2)))
        });
        cx.conj = self.phrase_matches(&cx, &self.conj, flag::M_CONJ, |_, _, _| true);
        cx.hdg = self.phrase_matches(&cx, &self.hedges, flag::M_HDG, |cx, i, len| {
            // "a kind of X" is a noun phrase, not a hedge
            !(len == 2
                && cx.has(i, flag::SORT_KIND)
                && cx.tag_is(i - 1, |t| {
                    matches!(
                        t,
                        PennTag::Dt
                            | PennTag::Pdt
                            | PennTag::Jj
                            | PennTag::Jjr
                            | PennTag::Jjs
                            | PennTag::PrpS
                            | PennTag::Wp
                            | PennTag::WpS
                    )
                }))
        });
        cx.emph = self.phrase_matches(&cx, &self.emph, flag::M_EMPH, |_, _, _| true);
        (0..tokens.len()).map(|i| self.fire_at(&cx, i as isize)).collect()
    }

    /// Longest-first phrase matching. A match is dropped when an accepted
    /// raw match of the same list starting up to `max_len - 1` tokens earlier
    /// still covers it, so the leftmost anchor wins.
    fn phrase_matches(
        &self,
        cx: &Cx,
        phrases: &Phrases,
        first: u64,
        accept: impl Fn(&Cx, isize, usize) -> bool,
    ) -> Vec<bool> {
        let n = cx.toks.len();
        let raw: Vec<usize> = (0..n)
            .map(|i| {
                if cx.flags[i] & first == 0 {
                    return 0;
                }
                let len = phrases.longest_at(cx.toks, i);
                if len > 0 && accept(cx, i as isize, len) {
                    len
                } else {
                    0
                }
            })
            .collect();
        (0..n)
            .map(|i| {
                raw[i] > 0
                    && !(i.saturating_sub(phrases.max_len - 1)..i).any(|j| j + raw[j] > i)
            })
            .collect()
    }

    fn fire_at(&self, cx: &Cx, i: isize) -> FeatureSet {
        use FeatureId as F;
        let mut out = FeatureSet::EMPTY;
        let mut set = |f: F, cond: bool| {
            if cond {
                out.insert(f);
            }
        };
        let tok = &cx.toks[i as usize];
        let w = tok.lower.as_str();
        let t = tok.pos;
        let has = |f: u64| cx.has(i, f);

        // tense and aspect
        set(F::Vbd, t == PennTag::Vbd);
        set(F::Vprt, matches!(t, PennTag::Vbp | PennTag::Vbz));
        if cx.have(i) {
            let j = cx.skip_adverbs(i, true);
            let perfect = cx.tag_is(j, |t| matches!(t, PennTag::Vbd | PennTag::Vbn))
                || ((cx.noun(i + 1) || cx.tag(i + 1) == Some(PennTag::Prp))
                    && cx.tag(i + 2) == Some(PennTag::Vbn));
            set(F::Peas, perfect);
        }

        // adverbials and pronouns
        set(F::Place, has(flag::PLACE) && !t.is_proper_noun());
        set(
            F::Time,
            has(flag::TIME) && !(has(flag::SOON) && cx.has(i + 1, flag::AS)),
        );
        set(F::Fpp1, has(flag::FPP1));
        set(F::Spp2, has(flag::SPP2));
        set(F::Tpp3, has(flag::TPP3));
        set(F::Pit, has(flag::PIT));
        set(F::Inpr, has(flag::INPR));
        if has(flag::DEM) && t == PennTag::Dt {
            // demonstrative standing alone as a pronoun
            let pron = i as usize + 1 == cx.toks.len()
                || cx.verb(i + 1)
                || cx.punct(i + 1)
                || cx.tag_is(i + 1, |t| matches!(t, PennTag::Md | PennTag::Wp))
                || cx.has(i + 1, flag::AND);
            set(F::Demp, pron);
            set(
                F::Demo,
                cx.noun(i + 1) || cx.adj(i + 1) || cx.tag(i + 1) == Some(PennTag::Cd),
            );
        }
        if cx.do_(i) {
            let j = cx.skip_adverbs(i, true);
            let aux_use = cx.verb(j)
                || ((cx.noun(i + 1) || cx.tag(i + 1) == Some(PennTag::Prp)) && cx.verb(i + 2));
            let excluded = cx.boundary(i - 1) || cx.has(i - 1, flag::WH);
            set(F::Prod, !aux_use && !excluded);
            set(F::Emph, cx.tag(i + 1) == Some(PennTag::Vb));
        }
        set(
            F::Whqu,
            has(flag::WH) && cx.boundary(i - 1) && cx.aux(i + 1),
        );

        // nominal forms
        let common_noun = matches!(t, PennTag::Nn | PennTag::Nns);
        let nomz = common_noun && is_nominalization(w);
        let ger = is_gerund_form(w)
            && (common_noun
                || (t == PennTag::Vbg
                    && cx.tag_is(i - 1, |p| {
                        matches!(p, PennTag::Dt | PennTag::In | PennTag::PrpS | PennTag::Pos)
                    })));
        set(F::Nomz, nomz);
        set(F::Ger, ger);
        set(F::Nn, common_noun && !nomz && !ger);

        // passives and be
        let pass = t == PennTag::Vbn
            && (cx.be(cx.back_over_adverbs(i))
                || ((cx.noun(i - 1) || cx.tag(i - 1) == Some(PennTag::Prp)) && cx.be(i - 2)));
        set(F::Pass, pass);
        if has(flag::BY) {
            let after_pass = |k: isize| {
                cx.tag(k) == Some(PennTag::Vbn)
                    && (cx.be(cx.back_over_adverbs(k))
                        || ((cx.noun(k - 1) || cx.tag(k - 1) == Some(PennTag::Prp))
                            && cx.be(k - 2)))
            };
            set(
                F::Bypa,
                after_pass(i - 1) || (cx.adverb(i - 1) && after_pass(i - 2)),
            );
        }
        if cx.be(i) {
            let j = cx.skip_adverbs(i, true);
            set(
                F::Bema,
                cx.tag_is(j, |t| {
                    matches!(
                        t,
                        PennTag::Dt
                            | PennTag::Pdt
                            | PennTag::PrpS
                            | PennTag::In
                            | PennTag::Jj
                            | PennTag::Jjr
                            | PennTag::Jjs
                            | PennTag::Cd
                    )
                }),
            );
            set(
                F::Auxb,
                cx.tag_is(j, |t| matches!(t, PennTag::Vbg | PennTag::Vbn)),
            );
        }
        set(F::Ex, t == PennTag::Ex);

        // that-clauses and relatives
        if has(flag::THAT) {
            let a = (cx.has(i - 1, flag::CLAUSE_CONJ) || cx.punct(i - 1))
                && (cx.tag_is(i + 1, |t| {
                    matches!(
                        t,
                        PennTag::Dt | PennTag::Prp | PennTag::Ex | PennTag::Nns | PennTag::Nnp | PennTag::Nnps
                    )
                }) || cx.has(i + 1, flag::THERE));
            let b = (cx.verb_list_verb(i - 1) || (cx.verb(i - 1) && cx.has(i - 1, flag::SEEM)))
                && i as usize + 1 < cx.toks.len()
                && !(cx.verb(i + 1)
                    || cx.aux(i + 1)
                    || cx.tag(i + 1) == Some(PennTag::Md)
                    || cx.punct(i + 1)
                    || cx.has(i + 1, flag::AND));
            let c = cx.noun(i - 1)
                && (3..=5).any(|d| {
                    let v = i - d;
                    (cx.verb_list_verb(v) || (cx.verb(v) && cx.has(v, flag::SEEM)))
                        && cx.tag(v + 1) == Some(PennTag::In)
                        && (v + 2..i).all(|k| !cx.punct(k))
                });
            set(F::Thvc, a || b || c);
            if cx.noun(i - 1) {
                let j = if cx.adverb(i + 1) { i + 2 } else { i + 1 };
                set(F::Tsub, cx.verb(j) || cx.tag(j) == Some(PennTag::Md));
                set(
                    F::Tobj,
                    cx.tag_is(i + 1, |t| {
                        matches!(
                            t,
                            PennTag::Dt
                                | PennTag::Prp
                                | PennTag::PrpS
                                | PennTag::Jj
                                | PennTag::Jjr
                                | PennTag::Jjs
                                | PennTag::Nns
                                | PennTag::Nnp
                                | PennTag::Nnps
                        )
                    }),
                );
            }
        }
        set(
            F::Pastp,
            t == PennTag::Vbn
                && cx.boundary(i - 1)
                && cx.tag_is(i + 1, |t| t == PennTag::In || t.is_adverb()),
        );
        set(
            F::Wzpast,
            t == PennTag::Vbn
                && (cx.noun(i - 1) || cx.has(i - 1, flag::QUPR))
                && (cx.tag(i + 1) == Some(PennTag::In) || cx.be(i + 1) || cx.adverb(i + 1)),
        );
        set(
            F::Wzpres,
            t == PennTag::Vbg && cx.tag_is(i - 1, |t| matches!(t, PennTag::Nn | PennTag::Nns)),
        );
        if has(flag::WHP) {
            if cx.noun(i - 1) && !cx.has(i - 2, flag::ASKTELL) && !cx.has(i - 3, flag::ASKTELL) {
                let j = if cx.adverb(i + 1) { i + 2 } else { i + 1 };
                set(F::Whsub, cx.verb(j) || cx.tag(j) == Some(PennTag::Md));
                set(
                    F::Whobj,
                    i as usize + 1 < cx.toks.len()
                        && !(cx.adverb(i + 1)
                            || cx.verb(i + 1)
                            || cx.tag(i + 1) == Some(PennTag::Md)),
                );
            }
            set(F::Pire, cx.tag(i - 1) == Some(PennTag::In));
        }
        set(
            F::Sere,
            has(flag::WHICH)
                && cx.punct(i - 1)
                && SERE_PUNCT.contains(&cx.toks[i as usize - 1].surface.as_str()),
        );

        // adverbial subordination
        set(F::Caus, has(flag::CAUS));
        set(F::Conc, has(flag::CONC));
        set(F::Cond, has(flag::COND));
        set(F::Osub, cx.osub[i as usize]);

        // prepositions, adjectives, adverbs
        if has(flag::PREPL) {
            let infinitive = has(flag::TO) && cx.verb(cx.skip_adverbs(i, true));
            let stranded = cx.punct(i + 1);
            set(F::Pin, !stranded && !infinitive && (i as usize + 1) < cx.toks.len());
            set(F::Stpr, stranded);
        }
        set(F::Jj, t.is_adjective() && (cx.adj(i + 1) || cx.noun(i + 1)));
        if t.is_adjective() {
            let k = if cx.adverb(i - 1) { i - 2 } else { i - 1 };
            let after_copula = cx.be(k) || (cx.verb(k) && cx.has(k, flag::SEEM));
            set(
                F::Pred,
                after_copula && !(cx.adj(i + 1) || cx.adverb(i + 1) || cx.noun(i + 1)),
            );
        }
        set(
            F::Rb,
            matches!(t, PennTag::Rb | PennTag::Rbr | PennTag::Rbs | PennTag::Wrb),
        );
        set(
            F::Conj,
            cx.conj[i as usize]
                || (has(flag::RATHER) && cx.punct(i - 1) && (cx.punct(i + 1) || i as usize + 1 == cx.toks.len())),
        );
        set(F::Dwnt, has(flag::DWNT));
        set(F::Amp, has(flag::AMP));
        set(F::Dpar, has(flag::DPAR) && cx.boundary(i - 1));
        set(F::Hdg, cx.hdg[i as usize]);
        set(
            F::Emph,
            cx.emph[i as usize] || (has(flag::REAL_SO) && cx.adj(i + 1)),
        );

        // modals and verb classes
        let modal = t == PennTag::Md;
        set(F::Pomd, modal && has(flag::POMD));
        set(F::Nemd, modal && has(flag::NEMD));
        set(F::Prmd, modal && has(flag::PRMD));
        let verb = t.is_verb();
        set(F::Pubv, verb && has(flag::PUBV));
        set(F::Priv, verb && has(flag::PRIV));
        set(F::Suav, verb && has(flag::SUAV));
        set(F::Smp, verb && has(flag::SMP));
        set(
            F::Cont,
            has(flag::CONTR) || (w == "'s" && t != PennTag::Pos),
        );
        if verb && has(flag::VERB_LIST) {
            let a = cx.has(i + 1, flag::SUBJ)
                || (cx.has(i + 1, flag::DEM) && !cx.has(i + 1, flag::THAT));
            let subject = |k: isize| cx.noun(k) || cx.tag(k) == Some(PennTag::Prp);
            let finite = |k: isize| cx.verb(k) || cx.tag(k) == Some(PennTag::Md);
            let b = subject(i + 1) && finite(i + 2);
            let c = cx.tag_is(i + 1, |t| {
                t.is_adjective()
                    || t.is_adverb()
                    || matches!(t, PennTag::Dt | PennTag::Pdt | PennTag::PrpS)
            }) && {
                let n = if cx.adj(i + 2) { i + 3 } else { i + 2 };
                cx.noun(n) && finite(n + 1)
            };
            set(F::Thatd, a || b || c);
        }

        // splits and coordination
        if has(flag::TO) && t == PennTag::To {
            set(
                F::Spin,
                cx.adverb_not_neg(i + 1)
                    && (cx.tag(i + 2) == Some(PennTag::Vb)
                        || (cx.adverb_not_neg(i + 2) && cx.tag(i + 3) == Some(PennTag::Vb))),
            );
            set(F::To, cx.tag(cx.skip_adverbs(i, true)) == Some(PennTag::Vb));
        }
        if cx.aux(i) {
            set(
                F::Spau,
                cx.adverb_not_neg(i + 1)
                    && (cx.verb(i + 2) || (cx.adverb_not_neg(i + 2) && cx.verb(i + 3))),
            );
        }
        if has(flag::AND) {
            let same = |f: fn(PennTag) -> bool| cx.tag_is(i - 1, f) && cx.tag_is(i + 1, f);
            set(
                F::Phc,
                same(PennTag::is_noun)
                    || same(PennTag::is_adjective)
                    || same(PennTag::is_adverb)
                    || same(PennTag::is_verb),
            );
            let pronoun_next = cx.has(i + 1, flag::SUBJ | flag::YOU_IT | flag::DEM)
                || matches!(cx.lower(i + 1), Some("so" | "then"))
                || (cx.has(i + 1, flag::THERE) && cx.be(i + 2));
            let after_punct = cx.punct(i - 1) && pronoun_next;
            let clause_initial = i == 0
                || (cx.punct(i - 1)
                    && CLAUSE_PUNCT.contains(&cx.toks[i as usize - 1].surface.as_str()));
            let before_clause_word = cx.has(i + 1, flag::CLAUSE_WORD);
            set(F::Andc, after_punct || clause_initial || before_clause_word);
        }
        set(F::Xx0, has(flag::NEG));
        set(F::Syne, has(flag::SYNE) && (cx.adj(i + 1) || cx.noun(i + 1)));
        set(F::Quan, has(flag::QUAN));
        set(F::Qupr, has(flag::QUPR));
        set(F::Art, has(flag::ART));
        set(F::Inda, has(flag::INDA));
        set(F::Cap, tok.surface.chars().next().is_some_and(char::is_uppercase));
        set(F::Sconj, has(flag::SUBORD) && t == PennTag::In);
        set(F::Cconj, t == PennTag::Cc);
        set(F::Det, matches!(t, PennTag::Dt | PennTag::Pdt));

        // surface-level units
        let s = tok.surface.as_str();
        set(F::Emoj, s.chars().next().is_some_and(crate::pos::is_emoji));
        set(F::Emot, has(flag::EMOT));
        set(F::Excl, s == "!");
        set(F::Ques, s == "?");
        set(F::Quot, QUOTES.contains(&s));
        set(
            F::Hash,
            s.starts_with('#') && s[1..].chars().next().is_some_and(char::is_alphanumeric),
        );
        set(
            F::At,
            s.starts_with('@') && s[1..].chars().next().is_some_and(char::is_alphanumeric),
        );
        set(F::Url, crate::pos::is_url(s));

        // tag-level classes
        set(F::Inf, t == PennTag::Vb);
        set(F::Uh, t == PennTag::Uh);
        set(F::Num, t == PennTag::Cd);
        set(F::Laugh, has(flag::LAUGH) || is_laugh(w));
        set(F::Prp, t == PennTag::PrpS || has(flag::PRP_PRON));
        set(
            F::Prep,
            (t == PennTag::In && !has(flag::SUBORD))
                || (t == PennTag::To && !cx.verb(cx.skip_adverbs(i, true))),
        );
        set(F::Nnp, t.is_proper_noun());
        set(
            F::Sbjp,
            has(flag::SUBJ)
                || (has(flag::YOU_IT) && (cx.verb(i + 1) || cx.tag(i + 1) == Some(PennTag::Md))),
        );
        set(F::Wh, has(flag::WH));
        set(F::Accu, has(flag::ACC) || (w == "her" && t == PennTag::Prp));
        set(
            F::Pgas,
            t == PennTag::Vbg && cx.be(cx.back_over_adverbs(i)),
        );
        set(F::Cmadj, t == PennTag::Jjr);
        set(F::Spadj, t == PennTag::Jjs);
        set(
            F::X,
            matches!(t, PennTag::Fw | PennTag::Ls | PennTag::Sym | PennTag::Other),
        );
        set(
            F::Whcl,
            has(flag::WH)
                && cx.verb_list_verb(i - 1)
                && i as usize + 1 < cx.toks.len()
                && !cx.aux(i + 1)
                && cx.tag(i + 1) != Some(PennTag::Md),
        );
        out
    }
}
