//! The closed feature inventory and a compact bit set over it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Whether a feature is counted per token or measured over a chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureKind {
    Countable,
    RealValued,
}

macro_rules! features {
    ($( $variant:ident => $code:literal, $kind:ident, $desc:literal; )*) => {
        /// One of the 96 stylistic features, in canonical column order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[repr(u8)]
        pub enum FeatureId {
            $( $variant, )*
        }

        impl FeatureId {
            /// Every feature, in canonical order.
            pub const ALL: [FeatureId; FEATURE_COUNT] = [ $( FeatureId::$variant, )* ];

            const CODES: [&'static str; FEATURE_COUNT] = [ $( $code, )* ];
            const KINDS: [FeatureKind; FEATURE_COUNT] = [ $( FeatureKind::$kind, )* ];
            const DESCRIPTIONS: [&'static str; FEATURE_COUNT] = [ $( $desc, )* ];
        }
    };
}

/// Number of features in the inventory.
pub const FEATURE_COUNT: usize = 96;

features! {
    Vbd => "VBD", Countable, "Past tense verbs (VBD tag)";
    Peas => "PEAS", Countable, "Perfect aspect: HAVE + (ADV) + (ADV) + VBD/VBN, or HAVE + N/PRO + VBN";
    Vprt => "VPRT", Countable, "Present tense verbs (VBP or VBZ tag)";
    Place => "PLACE", Countable, "Place adverbials from the list, not tagged as proper noun";
    Time => "TIME", Countable, "Time adverbials from the list, excluding 'soon' followed by 'as'";
    Fpp1 => "FPP1", Countable, "First person pronouns";
    Spp2 => "SPP2", Countable, "Second person pronouns";
    Tpp3 => "TPP3", Countable, "Third person pronouns";
    Pit => "PIT", Countable, "Pronoun 'it' and its forms";
    Inpr => "INPR", Countable, "Indefinite pronouns";
    Demp => "DEMP", Countable, "Demonstrative pronouns: this/that/these/those + verb, punctuation, WH word or 'and'";
    Prod => "PROD", Countable, "Pro-verb 'do': not followed by a verb, not after clause start or WH word";
    Whqu => "WHQU", Countable, "Direct WH-questions: clause start + WH word + auxiliary";
    Nomz => "NOMZ", Countable, "Nominalisations ending in -tion, -ment, -ness, -ity";
    Ger => "GER", Countable, "Gerunds of at least 10 characters ending in -ing/-ings";
    Nn => "NN", Countable, "Other nouns (not nominalisations or gerunds)";
    Pass => "PASS", Countable, "Passives: BE + (ADV) + (ADV) + VBN, or BE + N/PRO + VBN";
    Bypa => "BYPA", Countable, "'by' directly following a passive participle";
    Bema => "BEMA", Countable, "BE as main verb: BE + determiner, possessive, preposition, adjective or numeral";
    Ex => "EX", Countable, "Existential 'there'";
    Thvc => "THVC", Countable, "That-verb complements";
    Pastp => "PASTP", Countable, "Past participial clauses: punctuation + VBN + preposition/adverb";
    Wzpast => "WZPAST", Countable, "Past participial WHIZ deletion: noun + VBN + preposition/BE/adverb";
    Wzpres => "WZPRES", Countable, "Present participial WHIZ deletion: noun + VBG";
    Tsub => "TSUB", Countable, "That-relatives in subject position: noun + that + (ADV) + verb";
    Tobj => "TOBJ", Countable, "That-relatives in object position: noun + that + determiner/pronoun/adjective/noun";
    Whsub => "WHSUB", Countable, "WH-relatives in subject position: noun + WH pronoun + (ADV) + verb";
    Whobj => "WHOBJ", Countable, "WH-relatives in object position: noun + WH pronoun + non-verb";
    Pire => "PIRE", Countable, "Pied-piping relatives: preposition + who/whom/whose/which";
    Sere => "SERE", Countable, "Sentence relatives: comma, semicolon or dash + 'which'";
    Caus => "CAUS", Countable, "Causative subordinator 'because'";
    Conc => "CONC", Countable, "Concessive subordinators 'although', 'though', 'tho'";
    Cond => "COND", Countable, "Conditional subordinators 'if', 'unless'";
    Osub => "OSUB", Countable, "Other adverbial subordinators (multi-word units matched longest-first)";
    Pin => "PIN", Countable, "Prepositional phrases: listed preposition not followed by punctuation";
    Jj => "JJ", Countable, "Attributive adjectives: adjective + adjective/noun";
    Pred => "PRED", Countable, "Predicative adjectives: BE/seem/appear + (ADV) + adjective + non-adjective/noun";
    Rb => "RB", Countable, "Adverbs (RB, RBR, RBS, WRB tags)";
    Conj => "CONJ", Countable, "Conjuncts from the list, or punctuation-bounded 'rather'/'else'/'altogether'";
    Dwnt => "DWNT", Countable, "Downtoners";
    Amp => "AMP", Countable, "Amplifiers";
    Dpar => "DPAR", Countable, "Discourse particles after punctuation or at clause start";
    Hdg => "HDG", Countable, "Hedges";
    Emph => "EMPH", Countable, "Emphatics";
    Demo => "DEMO", Countable, "Demonstratives used as determiners";
    Pomd => "POMD", Countable, "Possibility modals";
    Nemd => "NEMD", Countable, "Necessity modals";
    Prmd => "PRMD", Countable, "Predictive modals";
    Pubv => "PUBV", Countable, "Public verbs";
    Priv => "PRIV", Countable, "Private verbs";
    Suav => "SUAV", Countable, "Suasive verbs";
    Smp => "SMP", Countable, "Seem/appear verbs";
    Cont => "CONT", Countable, "Reduced forms (contracted clitics)";
    Thatd => "THATD", Countable, "Subordinator 'that' deletion after public/private/suasive verbs";
    Stpr => "STPR", Countable, "Stranded prepositions: preposition + punctuation";
    Spin => "SPIN", Countable, "Split infinitives: to + ADV + (ADV) + VB";
    Spau => "SPAU", Countable, "Split auxiliaries: AUX + ADV + (ADV) + verb";
    Phc => "PHC", Countable, "Phrasal coordination: X and X for noun, verb, adjective or adverb";
    Andc => "ANDC", Countable, "'and' coordinating independent clauses";
    Xx0 => "XX0", Countable, "Analytic negation: 'not', 'n't'";
    Syne => "SYNE", Countable, "Synthetic negation: no/neither/nor + adjective/noun";
    Quan => "QUAN", Countable, "Quantifiers";
    Qupr => "QUPR", Countable, "Quantifier pronouns";
    Art => "ART", Countable, "Articles: the, a, an";
    Auxb => "AUXB", Countable, "Auxiliary BE: BE + (ADV) + (ADV) + VBG/VBN";
    Cap => "CAP", Countable, "Words starting with a capital letter";
    Sconj => "SCONJ", Countable, "Subordinating conjunctions";
    Cconj => "CCONJ", Countable, "Coordinating conjunctions (CC tag)";
    Det => "DET", Countable, "Determiners (DT, PDT tags)";
    Emoj => "EMOJ", Countable, "Emojis";
    Emot => "EMOT", Countable, "Emoticons";
    Excl => "EXCL", Countable, "Exclamation mark";
    Hash => "HASH", Countable, "Words starting with '#'";
    Inf => "INF", Countable, "Infinitive (base form) verbs (VB tag)";
    Uh => "UH", Countable, "Interjections (UH tag)";
    Num => "NUM", Countable, "Numerals (CD tag)";
    Laugh => "LAUGH", Countable, "Laughter acronyms and onomatopoeia";
    Prp => "PRP", Countable, "Possessive pronouns";
    Prep => "PREP", Countable, "Prepositions (IN not used as subordinator, or prepositional 'to')";
    Nnp => "NNP", Countable, "Proper nouns (NNP, NNPS tags)";
    Ques => "QUES", Countable, "Question mark";
    Quot => "QUOT", Countable, "Quotation marks";
    At => "AT", Countable, "Words starting with '@'";
    Sbjp => "SBJP", Countable, "Subject pronouns";
    Url => "URL", Countable, "URLs";
    Wh => "WH", Countable, "WH words";
    Inda => "INDA", Countable, "Indefinite articles: a, an";
    Accu => "ACCU", Countable, "Accusative case pronouns";
    Pgas => "PGAS", Countable, "Progressive aspect: VBG after BE + (ADV) + (ADV)";
    Cmadj => "CMADJ", Countable, "Comparative adjectives (JJR tag)";
    Spadj => "SPADJ", Countable, "Superlative adjectives (JJS tag)";
    X => "X", Countable, "Words not fitting other POS categories (FW, LS, SYM, OTHER tags)";
    Awl => "AWL", RealValued, "Mean word length in characters";
    Ttr => "TTR", RealValued, "Type-token ratio";
    To => "TO", Countable, "Infinitive marker: to + (ADV) + (ADV) + VB";
    Whcl => "WHCL", Countable, "WH clauses: public/private/suasive verb + WH word + non-auxiliary";
}

/// Codes accepted on input that resolve to another feature.
const ALIASES: [(&str, FeatureId); 1] = [("TRB", FeatureId::Rb)];

impl FeatureId {
    /// Position in canonical order.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<FeatureId> {
        Self::ALL.get(index).copied()
    }

    /// Upper-case mnemonic, e.g. `"PEAS"`.
    pub fn code(self) -> &'static str {
        Self::CODES[self.index()]
    }

    pub fn kind(self) -> FeatureKind {
        Self::KINDS[self.index()]
    }

    pub fn description(self) -> &'static str {
        Self::DESCRIPTIONS[self.index()]
    }

    pub fn is_countable(self) -> bool {
        self.kind() == FeatureKind::Countable
    }

    /// Iterator over countable features in canonical order.
    pub fn countable() -> impl Iterator<Item = FeatureId> {
        Self::ALL.into_iter().filter(|f| f.is_countable())
    }

    /// Resolve a code (case-insensitive), including aliases.
    pub fn from_code(code: &str) -> Option<FeatureId> {
        let upper = code.trim().to_ascii_uppercase();
        Self::CODES
            .iter()
            .position(|c| *c == upper)
            .map(|i| Self::ALL[i])
            .or_else(|| ALIASES.iter().find(|(a, _)| *a == upper).map(|(_, f)| *f))
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown feature code `{0}`")]
pub struct UnknownFeature(pub String);

impl FromStr for FeatureId {
    type Err = UnknownFeature;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FeatureId::from_code(s).ok_or_else(|| UnknownFeature(s.to_string()))
    }
}

impl Serialize for FeatureId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for FeatureId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of features packed into 128 bits (bit `i` = `FeatureId::ALL[i]`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FeatureSet(u128);

impl FeatureSet {
    pub const EMPTY: FeatureSet = FeatureSet(0);

    pub fn from_bits(bits: u128) -> Self {
        FeatureSet(bits & ((1u128 << FEATURE_COUNT) - 1))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn insert(&mut self, feature: FeatureId) {
        self.0 |= 1u128 << feature.index();
    }

    #[inline]
    pub fn remove(&mut self, feature: FeatureId) {
        self.0 &= !(1u128 << feature.index());
    }

    #[inline]
    pub fn contains(self, feature: FeatureId) -> bool {
        self.0 & (1u128 << feature.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: FeatureSet) -> FeatureSet {
        FeatureSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = FeatureId> {
        FeatureId::ALL.into_iter().filter(move |f| self.contains(*f))
    }

    /// 96-character string of `0`/`1`, canonical order, first feature first.
    pub fn to_bitstring(self) -> String {
        FeatureId::ALL
            .iter()
            .map(|f| if self.contains(*f) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Option<FeatureSet> {
        if s.len() != FEATURE_COUNT {
            return None;
        }
        let mut set = FeatureSet::EMPTY;
        for (i, b) in s.bytes().enumerate() {
            match b {
                b'1' => set.insert(FeatureId::ALL[i]),
                b'0' => {}
                _ => return None,
            }
        }
        Some(set)
    }
}

impl FromIterator<FeatureId> for FeatureSet {
    fn from_iter<I: IntoIterator<Item = FeatureId>>(iter: I) -> Self {
        let mut set = FeatureSet::EMPTY;
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl Serialize for FeatureSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FeatureSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let codes = Vec::<FeatureId>::deserialize(deserializer)?;
        Ok(codes.into_iter().collect())
    }
}
