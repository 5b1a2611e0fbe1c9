use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

macro_rules! penn_tags {
    ($( $variant:ident => $code:literal ),* $(,)?) => {
        /// Penn Treebank part-of-speech tag, plus `PUNCT` and a catch-all `OTHER`.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub enum PennTag {
            $( $variant, )*
            Punct,
            #[default]
            Other,
        }

        impl PennTag {
            /// Every tag, Penn codes first.
            pub const ALL: &'static [PennTag] = &[$( PennTag::$variant, )* PennTag::Punct, PennTag::Other];

            pub fn as_str(self) -> &'static str {
                match self {
                    $( PennTag::$variant => $code, )*
                    PennTag::Punct => "PUNCT",
                    PennTag::Other => "OTHER",
                }
            }

            /// Parse a tag code. Penn punctuation tags collapse to `Punct`;
            /// anything unrecognised becomes `Other`.
            pub fn parse(code: &str) -> PennTag {
                match code {
                    $( $code => PennTag::$variant, )*
                    "PUNCT" | "." | "," | ":" | "``" | "''" | "\"" | "-LRB-" | "-RRB-"
                    | "(" | ")" | "HYPH" | "NFP" => PennTag::Punct,
                    _ => PennTag::Other,
                }
            }
        }
    };
}

penn_tags! {
    Cc => "CC",
    Cd => "CD",
    Dt => "DT",
    Ex => "EX",
    Fw => "FW",
    In => "IN",
    Jj => "JJ",
    Jjr => "JJR",
    Jjs => "JJS",
    Ls => "LS",
    Md => "MD",
    Nn => "NN",
    Nns => "NNS",
    Nnp => "NNP",
    Nnps => "NNPS",
    Pdt => "PDT",
    Pos => "POS",
    Prp => "PRP",
    PrpS => "PRP$",
    Rb => "RB",
    Rbr => "RBR",
    Rbs => "RBS",
    Rp => "RP",
    Sym => "SYM",
    To => "TO",
    Uh => "UH",
    Vb => "VB",
    Vbd => "VBD",
    Vbg => "VBG",
    Vbn => "VBN",
    Vbp => "VBP",
    Vbz => "VBZ",
    Wdt => "WDT",
    Wp => "WP",
    WpS => "WP$",
    Wrb => "WRB",
}

impl PennTag {
    #[inline]
    pub fn is_noun(self) -> bool {
        matches!(self, PennTag::Nn | PennTag::Nns | PennTag::Nnp | PennTag::Nnps)
    }

    /// NN or NNS.
    #[inline]
    pub fn is_common_noun(self) -> bool {
        matches!(self, PennTag::Nn | PennTag::Nns)
    }

    #[inline]
    pub fn is_proper_noun(self) -> bool {
        matches!(self, PennTag::Nnp | PennTag::Nnps)
    }

    #[inline]
    pub fn is_verb(self) -> bool {
        matches!(
            self,
            PennTag::Vb | PennTag::Vbd | PennTag::Vbg | PennTag::Vbn | PennTag::Vbp | PennTag::Vbz
        )
    }

    #[inline]
    pub fn is_adjective(self) -> bool {
        matches!(self, PennTag::Jj | PennTag::Jjr | PennTag::Jjs)
    }

    /// RB, RBR, RBS.
    #[inline]
    pub fn is_adverb(self) -> bool {
        matches!(self, PennTag::Rb | PennTag::Rbr | PennTag::Rbs)
    }

    #[inline]
    pub fn is_punct(self) -> bool {
        self == PennTag::Punct
    }
}

impl fmt::Display for PennTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PennTag {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(PennTag::parse(s))
    }
}

impl Serialize for PennTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for PennTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(PennTag::parse(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_codes_map_to_other() {
        assert_eq!(PennTag::parse("XYZ"), PennTag::Other);
        assert_eq!(PennTag::parse(""), PennTag::Other);
        assert_eq!(PennTag::parse("ADD"), PennTag::Other);
    }

    #[test]
    fn punctuation_codes_collapse() {
        for code in [".", ",", ":", "``", "''", "-LRB-", "HYPH", "PUNCT"] {
            assert_eq!(PennTag::parse(code), PennTag::Punct, "{code}");
        }
    }

    #[test]
    fn codes_round_trip() {
        for code in ["PRP$", "WP$", "VBN", "NNPS", "OTHER", "PUNCT"] {
            assert_eq!(PennTag::parse(code).as_str(), code);
        }
    }
}
