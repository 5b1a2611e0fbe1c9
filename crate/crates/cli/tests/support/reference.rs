//! A deliberately slow second implementation of the per-token rules.
//! Words are matched by string membership, every rule re-scans its own
//! window, and phrases are found by brute force. Nothing here is shared
//! with the engine beyond the token and tag types.

use std::collections::HashSet;

use biberkit_core::pos::morph::verb_forms;
use biberkit_core::pos::{is_emoji, is_url};
use biberkit_core::rules::WordLists;
use biberkit_core::{FeatureId as F, FeatureSet, PennTag as T, Token};

fn set(words: &[&str]) -> HashSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

fn singles(list: &[String]) -> HashSet<String> {
    list.iter().filter(|e| !e.contains(' ')).cloned().collect()
}

fn forms(list: &[String]) -> HashSet<String> {
    list.iter()
        .flat_map(|l| verb_forms(l.split(' ').next().unwrap()).all())
        .collect()
}

pub struct Reference {
    fpp1: HashSet<String>,
    spp2: HashSet<String>,
    tpp3: HashSet<String>,
    pit: HashSet<String>,
    dem: HashSet<String>,
    whp: HashSet<String>,
    subj: HashSet<String>,
    acc: HashSet<String>,
    poss_pron: HashSet<String>,
    neg: HashSet<String>,
    contr: HashSet<String>,
    be: HashSet<String>,
    have: HashSet<String>,
    do_: HashSet<String>,
    ask_tell: HashSet<String>,
    clause_conj: HashSet<String>,
    clause_words: HashSet<String>,
    place: HashSet<String>,
    time: HashSet<String>,
    inpr: HashSet<String>,
    dwnt: HashSet<String>,
    amp: HashSet<String>,
    dpar: HashSet<String>,
    quan: HashSet<String>,
    qupr: HashSet<String>,
    laugh: HashSet<String>,
    emot: HashSet<String>,
    wh: HashSet<String>,
    nemd: HashSet<String>,
    pomd: HashSet<String>,
    prmd: HashSet<String>,
    preps: HashSet<String>,
    subords: HashSet<String>,
    pubv: HashSet<String>,
    private: HashSet<String>,
    suav: HashSet<String>,
    seem: HashSet<String>,
    osub: Vec<Vec<String>>,
    conj: Vec<Vec<String>>,
    hedges: Vec<Vec<String>>,
    emph: Vec<Vec<String>>,
}

fn phrases(list: &[String]) -> Vec<Vec<String>> {
    list.iter().map(|e| e.split(' ').map(String::from).collect()).collect()
}

impl Reference {
    pub fn new(l: &WordLists) -> Reference {
        let wh = singles(&l.wh_words);
        let mut clause_words = wh.clone();
        for w in ["because", "although", "though", "tho", "if", "unless"] {
            clause_words.insert(w.into());
        }
        clause_words.extend(singles(&l.other_subordinators));
        clause_words.extend(singles(&l.discourse_particles));
        clause_words.extend(singles(&l.conjuncts));
        Reference {
            fpp1: set(&["i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"]),
            spp2: set(&["you", "your", "yours", "yourself", "yourselves"]),
            tpp3: set(&[
                "he", "she", "they", "him", "her", "them", "his", "their", "hers", "theirs", "himself", "herself",
                "themselves",
            ]),
            pit: set(&["it", "its", "itself"]),
            dem: set(&["this", "that", "these", "those"]),
            whp: set(&["who", "whom", "whose", "which"]),
            subj: set(&["i", "we", "he", "she", "they"]),
            acc: set(&["me", "us", "him", "them", "whom"]),
            poss_pron: set(&["mine", "ours", "yours", "hers", "theirs"]),
            neg: set(&["not", "n't"]),
            contr: set(&["n't", "'ll", "'re", "'ve", "'m", "'d"]),
            be: set(&["be", "am", "is", "are", "was", "were", "been", "being", "'re", "'m"]),
            have: set(&["have", "has", "had", "having", "'ve"]),
            do_: set(&["do", "does", "did"]),
            ask_tell: set(&["ask", "asks", "asked", "asking", "tell", "tells", "told", "telling"]),
            clause_conj: set(&["and", "nor", "but", "or", "also"]),
            clause_words,
            place: singles(&l.place_adverbials),
            time: singles(&l.time_adverbials),
            inpr: singles(&l.indefinite_pronouns),
            dwnt: singles(&l.downtoners),
            amp: singles(&l.amplifiers),
            dpar: singles(&l.discourse_particles),
            quan: singles(&l.quantifiers),
            qupr: singles(&l.quantifier_pronouns),
            laugh: singles(&l.laughter_acronyms),
            emot: singles(&l.emoticons),
            wh,
            nemd: singles(&l.necessity_modals),
            pomd: singles(&l.possibility_modals),
            prmd: singles(&l.predictive_modals),
            preps: singles(&l.prepositions),
            subords: singles(&l.subordinators),
            pubv: forms(&l.public_verbs),
            private: forms(&l.private_verbs),
            suav: forms(&l.suasive_verbs),
            seem: forms(&l.seem_appear),
            osub: phrases(&l.other_subordinators),
            conj: phrases(&l.conjuncts),
            hedges: phrases(&l.hedges),
            emph: phrases(&l.emphatics),
        }
    }

    pub fn annotate(&self, toks: &[Token]) -> Vec<FeatureSet> {
        let s = Sentence { r: self, t: toks };
        let osub = s.phrase_hits(&self.osub, |i, len| {
            !(len == 2 && s.word_in(i, &["so", "such"]) && s.w(i + 1) == Some("that") && (s.noun(i + 2) || s.adj(i + 2)))
        });
        let conj = s.phrase_hits(&self.conj, |_, _| true);
        let hedges = s.phrase_hits(&self.hedges, |i, len| {
            !(len == 2
                && s.word_in(i, &["sort", "kind"])
                && s.tag_in(i - 1, &[T::Dt, T::Pdt, T::Jj, T::Jjr, T::Jjs, T::PrpS, T::Wp, T::WpS]))
        });
        let emph = s.phrase_hits(&self.emph, |_, _| true);
        (0..toks.len())
            .map(|i| {
                let mut out = FeatureSet::EMPTY;
                for f in F::ALL {
                    if s.fires(f, i as isize, &osub, &conj, &hedges, &emph) {
                        out.insert(f);
                    }
                }
                out
            })
            .collect()
    }
}

struct Sentence<'a> {
    r: &'a Reference,
    t: &'a [Token],
}

impl Sentence<'_> {
    fn n(&self) -> isize {
        self.t.len() as isize
    }
    fn tok(&self, k: isize) -> Option<&Token> {
        if k < 0 { None } else { self.t.get(k as usize) }
    }
    fn w(&self, k: isize) -> Option<&str> {
        self.tok(k).map(|t| t.lower.as_str())
    }
    fn p(&self, k: isize) -> Option<T> {
        self.tok(k).map(|t| t.pos)
    }
    fn is(&self, k: isize, words: &HashSet<String>) -> bool {
        self.w(k).is_some_and(|w| words.contains(w))
    }
    fn word_in(&self, k: isize, words: &[&str]) -> bool {
        self.w(k).is_some_and(|w| words.contains(&w))
    }
    fn tag_in(&self, k: isize, tags: &[T]) -> bool {
        self.p(k).is_some_and(|t| tags.contains(&t))
    }
    fn tag_eq(&self, k: isize, tag: T) -> bool {
        self.p(k) == Some(tag)
    }
    fn verb(&self, k: isize) -> bool {
        self.tag_in(k, &[T::Vb, T::Vbd, T::Vbg, T::Vbn, T::Vbp, T::Vbz])
    }
    fn noun(&self, k: isize) -> bool {
        self.tag_in(k, &[T::Nn, T::Nns, T::Nnp, T::Nnps])
    }
    fn adj(&self, k: isize) -> bool {
        self.tag_in(k, &[T::Jj, T::Jjr, T::Jjs])
    }
    fn adv(&self, k: isize) -> bool {
        self.tag_in(k, &[T::Rb, T::Rbr, T::Rbs])
    }
    fn adv_not_neg(&self, k: isize) -> bool {
        self.adv(k) && !self.is(k, &self.r.neg)
    }
    fn punct(&self, k: isize) -> bool {
        self.tag_eq(k, T::Punct)
    }
    fn surface_in(&self, k: isize, set: &[&str]) -> bool {
        self.tok(k).is_some_and(|t| set.contains(&t.surface.as_str()))
    }
    fn be(&self, k: isize) -> bool {
        self.verb(k) && (self.is(k, &self.r.be) || self.w(k) == Some("'s"))
    }
    fn have(&self, k: isize) -> bool {
        self.verb(k) && (self.is(k, &self.r.have) || self.w(k) == Some("'d"))
    }
    fn do_(&self, k: isize) -> bool {
        self.verb(k) && self.is(k, &self.r.do_)
    }
    fn modal(&self, k: isize) -> bool {
        self.tag_eq(k, T::Md)
    }
    fn aux(&self, k: isize) -> bool {
        self.modal(k) || self.be(k) || self.have(k) || self.do_(k)
    }
    fn finite(&self, k: isize) -> bool {
        self.verb(k) || self.modal(k)
    }
    fn list_verb(&self, k: isize) -> bool {
        self.verb(k) && (self.is(k, &self.r.pubv) || self.is(k, &self.r.private) || self.is(k, &self.r.suav))
    }
    fn seem(&self, k: isize) -> bool {
        self.verb(k) && self.is(k, &self.r.seem)
    }
    fn after_adverbs(&self, k: isize) -> isize {
        let mut j = k + 1;
        if self.adv(j) {
            j += 1;
            if self.adv(j) {
                j += 1;
            }
        }
        j
    }
    fn before_adverbs(&self, k: isize) -> isize {
        let mut j = k - 1;
        if self.adv(j) {
            j -= 1;
            if self.adv(j) {
                j -= 1;
            }
        }
        j
    }
    fn passive_at(&self, k: isize) -> bool {
        self.tag_eq(k, T::Vbn)
            && (self.be(self.before_adverbs(k)) || ((self.noun(k - 1) || self.tag_eq(k - 1, T::Prp)) && self.be(k - 2)))
    }

    /// Per position: does an accepted phrase start here that no earlier
    /// accepted phrase overlaps?
    fn phrase_hits(&self, list: &[Vec<String>], accept: impl Fn(isize, usize) -> bool) -> Vec<bool> {
        let raw: Vec<usize> = (0..self.t.len())
            .map(|i| {
                let best = list
                    .iter()
                    .filter(|e| {
                        i + e.len() <= self.t.len() && e.iter().enumerate().all(|(d, w)| self.t[i + d].lower == *w)
                    })
                    .map(|e| e.len())
                    .max()
                    .unwrap_or(0);
                if best > 0 && accept(i as isize, best) { best } else { 0 }
            })
            .collect();
        (0..raw.len()).map(|i| raw[i] > 0 && (0..i).all(|j| j + raw[j] <= i)).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn fires(&self, f: F, i: isize, osub: &[bool], conj: &[bool], hedges: &[bool], emph: &[bool]) -> bool {
        let r = self.r;
        let tok = self.tok(i).unwrap();
        let w = tok.lower.as_str();
        let t = tok.pos;
        let s = tok.surface.as_str();
        let last = i == self.n() - 1;
        let ui = i as usize;
        match f {
            F::Vbd => t == T::Vbd,
            F::Vprt => t == T::Vbp || t == T::Vbz,
            F::Peas => {
                self.have(i)
                    && (self.tag_in(self.after_adverbs(i), &[T::Vbd, T::Vbn])
                        || ((self.noun(i + 1) || self.tag_eq(i + 1, T::Prp)) && self.tag_eq(i + 2, T::Vbn)))
            }
            F::Place => r.place.contains(w) && !matches!(t, T::Nnp | T::Nnps),
            F::Time => r.time.contains(w) && !(w == "soon" && self.w(i + 1) == Some("as")),
            F::Fpp1 => r.fpp1.contains(w),
            F::Spp2 => r.spp2.contains(w),
            F::Tpp3 => r.tpp3.contains(w),
            F::Pit => r.pit.contains(w),
            F::Inpr => r.inpr.contains(w),
            F::Demp => {
                r.dem.contains(w)
                    && t == T::Dt
                    && (last
                        || self.verb(i + 1)
                        || self.punct(i + 1)
                        || self.tag_in(i + 1, &[T::Md, T::Wp])
                        || self.w(i + 1) == Some("and"))
            }
            F::Demo => {
                r.dem.contains(w) && t == T::Dt && (self.noun(i + 1) || self.adj(i + 1) || self.tag_eq(i + 1, T::Cd))
            }
            F::Prod => {
                self.do_(i)
                    && !(self.verb(self.after_adverbs(i))
                        || ((self.noun(i + 1) || self.tag_eq(i + 1, T::Prp)) && self.verb(i + 2)))
                    && !(i == 0 || self.punct(i - 1) || self.is(i - 1, &r.wh))
            }
            F::Whqu => r.wh.contains(w) && (i == 0 || self.punct(i - 1)) && self.aux(i + 1),
            F::Nomz => matches!(t, T::Nn | T::Nns) && nominal(w),
            F::Ger => gerund(w) && (matches!(t, T::Nn | T::Nns) || (t == T::Vbg && self.tag_in(i - 1, &[T::Dt, T::In, T::PrpS, T::Pos]))),
            F::Nn => matches!(t, T::Nn | T::Nns) && !nominal(w) && !gerund(w),
            F::Pass => self.passive_at(i),
            F::Bypa => w == "by" && (self.passive_at(i - 1) || (self.adv(i - 1) && self.passive_at(i - 2))),
            F::Bema => {
                self.be(i)
                    && self.tag_in(self.after_adverbs(i), &[T::Dt, T::Pdt, T::PrpS, T::In, T::Jj, T::Jjr, T::Jjs, T::Cd])
            }
            F::Auxb => self.be(i) && self.tag_in(self.after_adverbs(i), &[T::Vbg, T::Vbn]),
            F::Ex => t == T::Ex,
            F::Thvc => {
                if w != "that" {
                    return false;
                }
                let a = (self.is(i - 1, &r.clause_conj) || self.punct(i - 1))
                    && (self.tag_in(i + 1, &[T::Dt, T::Prp, T::Ex, T::Nns, T::Nnp, T::Nnps]) || self.w(i + 1) == Some("there"));
                let b = (self.list_verb(i - 1) || self.seem(i - 1))
                    && !last
                    && !(self.verb(i + 1) || self.aux(i + 1) || self.punct(i + 1) || self.w(i + 1) == Some("and"));
                let c = self.noun(i - 1)
                    && [3, 4, 5].iter().any(|&d| {
                        let v = i - d;
                        (self.list_verb(v) || self.seem(v)) && self.tag_eq(v + 1, T::In) && !(v + 2..i).any(|k| self.punct(k))
                    });
                a || b || c
            }
            F::Tsub | F::Tobj if w != "that" || !self.noun(i - 1) => false,
            F::Tsub => {
                let j = if self.adv(i + 1) { i + 2 } else { i + 1 };
                self.finite(j)
            }
            F::Tobj => self.tag_in(i + 1, &[T::Dt, T::Prp, T::PrpS, T::Jj, T::Jjr, T::Jjs, T::Nns, T::Nnp, T::Nnps]),
            F::Pastp => t == T::Vbn && (i == 0 || self.punct(i - 1)) && (self.tag_eq(i + 1, T::In) || self.adv(i + 1)),
            F::Wzpast => {
                t == T::Vbn
                    && (self.noun(i - 1) || self.is(i - 1, &r.qupr))
                    && (self.tag_eq(i + 1, T::In) || self.be(i + 1) || self.adv(i + 1))
            }
            F::Wzpres => t == T::Vbg && self.tag_in(i - 1, &[T::Nn, T::Nns]),
            F::Whsub | F::Whobj
                if !(r.whp.contains(w) && self.noun(i - 1) && !self.is(i - 2, &r.ask_tell) && !self.is(i - 3, &r.ask_tell)) =>
            {
                false
            }
            F::Whsub => {
                let j = if self.adv(i + 1) { i + 2 } else { i + 1 };
                self.finite(j)
            }
            F::Whobj => !last && !(self.adv(i + 1) || self.verb(i + 1) || self.modal(i + 1)),
            F::Pire => r.whp.contains(w) && self.tag_eq(i - 1, T::In),
            F::Sere => w == "which" && self.punct(i - 1) && self.surface_in(i - 1, &[",", ";", "-", "--", "\u{2013}", "\u{2014}"]),
            F::Caus => w == "because",
            F::Conc => matches!(w, "although" | "though" | "tho"),
            F::Cond => matches!(w, "if" | "unless"),
            F::Osub => osub[ui],
            F::Pin => {
                r.preps.contains(w)
                    && !self.punct(i + 1)
                    && !(w == "to" && self.verb(self.after_adverbs(i)))
                    && !last
            }
            F::Stpr => r.preps.contains(w) && self.punct(i + 1),
            F::Jj => self.adj(i) && (self.adj(i + 1) || self.noun(i + 1)),
            F::Pred => {
                let k = if self.adv(i - 1) { i - 2 } else { i - 1 };
                self.adj(i) && (self.be(k) || self.seem(k)) && !(self.adj(i + 1) || self.adv(i + 1) || self.noun(i + 1))
            }
            F::Rb => matches!(t, T::Rb | T::Rbr | T::Rbs | T::Wrb),
            F::Conj => {
                conj[ui] || (matches!(w, "rather" | "else" | "altogether") && self.punct(i - 1) && (self.punct(i + 1) || last))
            }
            F::Dwnt => r.dwnt.contains(w),
            F::Amp => r.amp.contains(w),
            F::Dpar => r.dpar.contains(w) && (i == 0 || self.punct(i - 1)),
            F::Hdg => hedges[ui],
            F::Emph => emph[ui] || (matches!(w, "real" | "so") && self.adj(i + 1)) || (self.do_(i) && self.tag_eq(i + 1, T::Vb)),
            F::Pomd => t == T::Md && r.pomd.contains(w),
            F::Nemd => t == T::Md && r.nemd.contains(w),
            F::Prmd => t == T::Md && r.prmd.contains(w),
            F::Pubv => self.verb(i) && r.pubv.contains(w),
            F::Priv => self.verb(i) && r.private.contains(w),
            F::Suav => self.verb(i) && r.suav.contains(w),
            F::Smp => self.seem(i),
            F::Cont => r.contr.contains(w) || (w == "'s" && t != T::Pos),
            F::Thatd => {
                self.list_verb(i)
                    && (self.is(i + 1, &r.subj)
                        || self.word_in(i + 1, &["this", "these", "those"])
                        || ((self.noun(i + 1) || self.tag_eq(i + 1, T::Prp)) && self.finite(i + 2))
                        || ((self.adj(i + 1) || self.adv(i + 1) || self.tag_in(i + 1, &[T::Dt, T::Pdt, T::PrpS])) && {
                            let n = if self.adj(i + 2) { i + 3 } else { i + 2 };
                            self.noun(n) && self.finite(n + 1)
                        }))
            }
            F::Spin => {
                w == "to"
                    && t == T::To
                    && self.adv_not_neg(i + 1)
                    && (self.tag_eq(i + 2, T::Vb) || (self.adv_not_neg(i + 2) && self.tag_eq(i + 3, T::Vb)))
            }
            F::To => w == "to" && t == T::To && self.tag_eq(self.after_adverbs(i), T::Vb),
            F::Spau => {
                self.aux(i) && self.adv_not_neg(i + 1) && (self.verb(i + 2) || (self.adv_not_neg(i + 2) && self.verb(i + 3)))
            }
            F::Phc => {
                w == "and"
                    && ((self.noun(i - 1) && self.noun(i + 1))
                        || (self.adj(i - 1) && self.adj(i + 1))
                        || (self.adv(i - 1) && self.adv(i + 1))
                        || (self.verb(i - 1) && self.verb(i + 1)))
            }
            F::Andc => {
                if w != "and" {
                    return false;
                }
                let pronoun_next = self.is(i + 1, &r.subj)
                    || self.word_in(i + 1, &["you", "it", "so", "then"])
                    || self.is(i + 1, &r.dem)
                    || (self.w(i + 1) == Some("there") && self.be(i + 2));
                (self.punct(i - 1) && pronoun_next)
                    || i == 0
                    || (self.punct(i - 1) && self.surface_in(i - 1, &[".", "!", "?", ";", ":"]))
                    || self.is(i + 1, &r.clause_words)
            }
            F::Xx0 => r.neg.contains(w),
            F::Syne => matches!(w, "no" | "neither" | "nor") && (self.adj(i + 1) || self.noun(i + 1)),
            F::Quan => r.quan.contains(w),
            F::Qupr => r.qupr.contains(w),
            F::Art => matches!(w, "the" | "a" | "an"),
            F::Inda => matches!(w, "a" | "an"),
            F::Cap => s.chars().next().is_some_and(char::is_uppercase),
            F::Sconj => r.subords.contains(w) && t == T::In,
            F::Cconj => t == T::Cc,
            F::Det => matches!(t, T::Dt | T::Pdt),
            F::Emoj => s.chars().next().is_some_and(is_emoji),
            F::Emot => r.emot.contains(w),
            F::Excl => s == "!",
            F::Ques => s == "?",
            F::Quot => ["\"", "\u{201C}", "\u{201D}", "``", "''", "'", "\u{2018}", "\u{2019}"].contains(&s),
            F::Hash => tagged_handle(s, '#'),
            F::At => tagged_handle(s, '@'),
            F::Url => is_url(s),
            F::Inf => t == T::Vb,
            F::Uh => t == T::Uh,
            F::Num => t == T::Cd,
            F::Laugh => r.laugh.contains(w) || laugh(w),
            F::Prp => t == T::PrpS || r.poss_pron.contains(w),
            F::Prep => (t == T::In && !r.subords.contains(w)) || (t == T::To && !self.verb(self.after_adverbs(i))),
            F::Nnp => matches!(t, T::Nnp | T::Nnps),
            F::Sbjp => r.subj.contains(w) || (matches!(w, "you" | "it") && self.finite(i + 1)),
            F::Wh => r.wh.contains(w),
            F::Accu => r.acc.contains(w) || (w == "her" && t == T::Prp),
            F::Pgas => t == T::Vbg && self.be(self.before_adverbs(i)),
            F::Cmadj => t == T::Jjr,
            F::Spadj => t == T::Jjs,
            F::X => matches!(t, T::Fw | T::Ls | T::Sym | T::Other),
            F::Whcl => r.wh.contains(w) && self.list_verb(i - 1) && !last && !self.aux(i + 1) && !self.modal(i + 1),
            // measured over chunks, never per token
            F::Awl | F::Ttr => false,
        }
    }
}

fn nominal(w: &str) -> bool {
    let n = w.chars().count();
    ["tion", "tions", "ment", "ments", "ness", "nesses", "ity", "ities"]
        .into_iter()
        .any(|suf| n >= suf.len() + 2 && w.ends_with(suf))
}

fn gerund(w: &str) -> bool {
    w.chars().count() >= 10 && (w.ends_with("ing") || w.ends_with("ings"))
}

fn laugh(w: &str) -> bool {
    let half = w.len() / 2;
    w.len() >= 4 && w.len() % 2 == 0 && (w == "ha".repeat(half) || w == "he".repeat(half))
}

fn tagged_handle(s: &str, sigil: char) -> bool {
    let mut cs = s.chars();
    cs.next() == Some(sigil) && cs.next().is_some_and(char::is_alphanumeric)
}
