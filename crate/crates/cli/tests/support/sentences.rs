//! Random tagged sentences for comparing the engine with the reference.

use biberkit_core::rules::WordLists;
use biberkit_core::{PennTag, Token};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Random tagged sentences biased toward the words and tags the rules look at.
pub fn random_sentence(rng: &mut impl Rng, pools: &[(Vec<String>, Vec<PennTag>)], phrases: &[String], max_len: usize) -> Vec<Token> {
    let len = rng.random_range(1..=max_len);
    let mut out: Vec<(String, PennTag)> = Vec::new();
    while out.len() < len {
        if rng.random_bool(0.08) {
            let p = phrases.choose(rng).unwrap();
            for w in p.split(' ') {
                out.push((w.to_string(), *PennTag::ALL.choose(rng).unwrap()));
            }
            continue;
        }
        let (ws, tags) = pools.choose(rng).unwrap();
        let mut w = ws.choose(rng).unwrap().clone();
        if rng.random_bool(0.1) {
            let mut c = w.chars();
            if let Some(first) = c.next() {
                w = first.to_uppercase().chain(c).collect();
            }
        }
        let tag = if rng.random_bool(0.25) { *PennTag::ALL.choose(rng).unwrap() } else { *tags.choose(rng).unwrap() };
        out.push((w, tag));
    }
    out.truncate(len);
    Token::sequence(out.iter().map(|(w, t)| (w.as_str(), *t)))
}

pub type Pool = (Vec<String>, Vec<PennTag>);

pub fn word_pools(l: &WordLists) -> (Vec<Pool>, Vec<String>) {
    use PennTag as T;
    let owned = |ws: &[&str]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    let single = |ls: &[&Vec<String>]| -> Vec<String> {
        ls.iter().flat_map(|l| l.iter()).filter(|e| !e.contains(' ')).cloned().collect()
    };
    let verbs: Vec<String> = [&l.public_verbs, &l.private_verbs, &l.suasive_verbs, &l.seem_appear]
        .iter()
        .flat_map(|ls| ls.iter().take(12))
        .flat_map(|v| biberkit_core::pos::morph::verb_forms(v).all())
        .collect();
    let verb_tags = vec![T::Vb, T::Vbd, T::Vbg, T::Vbn, T::Vbp, T::Vbz];
    let pools = vec![
        (owned(&["be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m", "have", "has", "had", "'ve", "'d", "do", "does", "did"]), verb_tags.clone()),
        (verbs, verb_tags.clone()),
        (owned(&["walk", "walked", "walking", "given", "taken", "run", "eat", "ask", "told", "asked"]), verb_tags),
        (single(&[&l.necessity_modals, &l.possibility_modals, &l.predictive_modals]), vec![T::Md]),
        (owned(&["i", "me", "my", "mine", "we", "us", "our", "you", "your", "he", "she", "they", "him", "her", "them", "his", "it", "its", "itself", "hers"]), vec![T::Prp, T::PrpS]),
        (owned(&["this", "that", "these", "those", "the", "a", "an", "no", "neither", "all", "some"]), vec![T::Dt, T::In, T::Wdt, T::Pdt]),
        (owned(&["to"]), vec![T::To, T::In]),
        (owned(&["who", "whom", "whose", "which", "what", "where", "when", "why", "how"]), vec![T::Wdt, T::Wp, T::WpS, T::Wrb]),
        (single(&[&l.prepositions, &l.subordinators, &l.other_subordinators]), vec![T::In, T::Rb]),
        (owned(&["and", "or", "but", "nor", "also", "so", "then", "there", "because", "although", "if", "unless", "as", "soon", "rather", "else", "real", "such", "sort", "kind", "by", "not", "n't", "'ll"]), vec![T::Cc, T::Rb, T::In, T::Jj, T::Ex, T::Nn]),
        (single(&[&l.place_adverbials, &l.time_adverbials, &l.downtoners, &l.amplifiers, &l.discourse_particles, &l.conjuncts, &l.hedges, &l.emphatics]), vec![T::Rb, T::Jj, T::Nn, T::Uh]),
        (single(&[&l.indefinite_pronouns, &l.quantifiers, &l.quantifier_pronouns]), vec![T::Nn, T::Dt, T::Prp]),
        (owned(&["organization", "statement", "happiness", "reality", "understanding", "dog", "dogs", "table", "London", "Kim", "idea", "people"]), vec![T::Nn, T::Nns, T::Nnp, T::Vbg]),
        (owned(&["big", "bigger", "biggest", "likely", "happy", "clear", "sure"]), vec![T::Jj, T::Jjr, T::Jjs]),
        (owned(&["quickly", "really", "never", "just", "very"]), vec![T::Rb, T::Rbr, T::Rbs]),
        (owned(&[".", ",", "!", "?", ";", ":", "-", "--", "\"", "'", "\u{2014}"]), vec![T::Punct]),
        (owned(&["haha", "hehehe", "lol", ":)", "\u{1F600}", "#tag", "@user", "https://x.org", "42", "'s"]), vec![T::Uh, T::Sym, T::Cd, T::Pos, T::Other]),
    ];
    let phrases: Vec<String> = [&l.other_subordinators, &l.conjuncts, &l.hedges, &l.emphatics]
        .iter()
        .flat_map(|ls| ls.iter())
        .filter(|e| e.contains(' '))
        .cloned()
        .collect();
    (pools, phrases)
}
