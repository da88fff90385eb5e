//! Porter stemmer for English.
//!
//! A faithful port of Martin Porter's own ANSI C implementation of his 1980
//! suffix-stripping algorithm, including the three departures from the
//! published description that the reference implementation made canonical:
//!
//! * words of length <= 2 are left untouched,
//! * `-bli` maps to `-ble` (the 1980 description had `-abli` -> `-able`),
//! * `-logi` maps to `-log`.
//!
//! Operates on ASCII lowercase bytes. `i32` indices mirror the reference,
//! where the stem region is `b[0..=k]` and `j` marks the end of the stem
//! left of a matched suffix (both may legitimately go to -1).

struct Stemmer {
    b: Vec<u8>,
    k: i32,
    j: i32,
}

impl Stemmer {
    fn at(&self, i: i32) -> u8 {
        self.b[i as usize]
    }

    /// True when b[i] acts as a consonant; `y` is a consonant only when it
    /// starts the word or follows a vowel.
    fn is_cons(&self, i: i32) -> bool {
        match self.at(i) {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.is_cons(i - 1)
                }
            }
            _ => true,
        }
    }

    /// Number of consonant sequences (the "measure" m) in b[0..=j].
    fn measure(&self) -> i32 {
        let mut n = 0;
        let mut i = 0;
        loop {
            if i > self.j {
                return n;
            }
            if !self.is_cons(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.is_cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.is_cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.is_cons(i))
    }

    /// b[i-1..=i] is a double consonant.
    fn double_cons(&self, i: i32) -> bool {
        i >= 1 && self.at(i) == self.at(i - 1) && self.is_cons(i)
    }

    /// b[i-2..=i] is consonant-vowel-consonant with the final consonant not
    /// `w`, `x` or `y`; used to spot short stems like "hop-" that restore an
    /// `e` ("hoping" -> "hope").
    fn cvc(&self, i: i32) -> bool {
        if i < 2 || !self.is_cons(i) || self.is_cons(i - 1) || !self.is_cons(i - 2) {
            return false;
        }
        !matches!(self.at(i), b'w' | b'x' | b'y')
    }

    /// True when b[0..=k] ends with `s`; on success `j` is set to the end of
    /// the remaining stem.
    fn ends(&mut self, s: &[u8]) -> bool {
        let len = s.len() as i32;
        if len > self.k + 1 {
            return false;
        }
        let start = (self.k + 1 - len) as usize;
        if &self.b[start..=(self.k as usize)] != s {
            return false;
        }
        self.j = self.k - len;
        true
    }

    /// Replace the matched suffix b[j+1..=k] with `s`.
    fn set_to(&mut self, s: &[u8]) {
        let start = (self.j + 1) as usize;
        for (idx, &ch) in s.iter().enumerate() {
            if start + idx < self.b.len() {
                self.b[start + idx] = ch;
            } else {
                self.b.push(ch);
            }
        }
        self.k = self.j + s.len() as i32;
    }

    /// set_to gated on the stem having at least one consonant sequence.
    fn replace(&mut self, s: &[u8]) {
        if self.measure() > 0 {
            self.set_to(s);
        }
    }

    /// Plural and -ed/-ing endings: "ponies" -> "poni", "agreed" -> "agree",
    /// "hopping" -> "hop", "filing" -> "file".
    fn step1ab(&mut self) {
        if self.at(self.k) == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.at(self.k - 1) != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_cons(self.k) {
                self.k -= 1;
                if matches!(self.at(self.k), b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else if self.measure() == 1 && self.cvc(self.k) {
                self.set_to(b"e");
            }
        }
    }

    /// Terminal y -> i when the stem contains a vowel: "happy" -> "happi".
    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            let k = self.k as usize;
            self.b[k] = b'i';
        }
    }

    /// Double suffixes to single ones: "-ization" -> "-ize". Dispatch on the
    /// penultimate letter keeps the suffix comparisons cheap.
    fn step2(&mut self) {
        if self.k < 1 {
            return;
        }
        match self.at(self.k - 1) {
            b'a' => {
                if self.ends(b"ational") {
                    self.replace(b"ate");
                } else if self.ends(b"tional") {
                    self.replace(b"tion");
                }
            }
            b'c' => {
                if self.ends(b"enci") {
                    self.replace(b"ence");
                } else if self.ends(b"anci") {
                    self.replace(b"ance");
                }
            }
            b'e' => {
                if self.ends(b"izer") {
                    self.replace(b"ize");
                }
            }
            b'l' => {
                if self.ends(b"bli") {
                    self.replace(b"ble");
                } else if self.ends(b"alli") {
                    self.replace(b"al");
                } else if self.ends(b"entli") {
                    self.replace(b"ent");
                } else if self.ends(b"eli") {
                    self.replace(b"e");
                } else if self.ends(b"ousli") {
                    self.replace(b"ous");
                }
            }
            b'o' => {
                if self.ends(b"ization") {
                    self.replace(b"ize");
                } else if self.ends(b"ation") {
                    self.replace(b"ate");
                } else if self.ends(b"ator") {
                    self.replace(b"ate");
                }
            }
            b's' => {
                if self.ends(b"alism") {
                    self.replace(b"al");
                } else if self.ends(b"iveness") {
                    self.replace(b"ive");
                } else if self.ends(b"fulness") {
                    self.replace(b"ful");
                } else if self.ends(b"ousness") {
                    self.replace(b"ous");
                }
            }
            b't' => {
                if self.ends(b"aliti") {
                    self.replace(b"al");
                } else if self.ends(b"iviti") {
                    self.replace(b"ive");
                } else if self.ends(b"biliti") {
                    self.replace(b"ble");
                }
            }
            b'g' => {
                if self.ends(b"logi") {
                    self.replace(b"log");
                }
            }
            _ => {}
        }
    }

    /// "-icate" -> "-ic", "-ful" / "-ness" dropped, and friends.
    fn step3(&mut self) {
        match self.at(self.k) {
            b'e' => {
                if self.ends(b"icate") {
                    self.replace(b"ic");
                } else if self.ends(b"ative") {
                    self.replace(b"");
                } else if self.ends(b"alize") {
                    self.replace(b"al");
                }
            }
            b'i' => {
                if self.ends(b"iciti") {
                    self.replace(b"ic");
                }
            }
            b'l' => {
                if self.ends(b"ical") {
                    self.replace(b"ic");
                } else if self.ends(b"ful") {
                    self.replace(b"");
                }
            }
            b's' => {
                if self.ends(b"ness") {
                    self.replace(b"");
                }
            }
            _ => {}
        }
    }

    /// Strip residual suffixes when the measure of what remains exceeds 1.
    fn step4(&mut self) {
        if self.k < 1 {
            return;
        }
        let matched = match self.at(self.k - 1) {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant")
                    || self.ends(b"ement")
                    || self.ends(b"ment")
                    || self.ends(b"ent")
            }
            // -ion only counts after s or t ("adoption", "decision").
            b'o' => {
                (self.ends(b"ion") && self.j >= 0 && matches!(self.at(self.j), b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => false,
        };
        if matched && self.measure() > 1 {
            self.k = self.j;
        }
    }

    /// Tidy up: drop a final -e when safe ("probate" -> "probat" but
    /// "rate" stays), and -ll -> -l for long stems ("controll" -> "control").
    fn step5(&mut self) {
        self.j = self.k;
        if self.at(self.k) == b'e' {
            let a = self.measure();
            if a > 1 || (a == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.at(self.k) == b'l' && self.double_cons(self.k) && self.measure() > 1 {
            self.k -= 1;
        }
    }

    fn run(mut self) -> String {
        if self.k > 1 {
            self.step1ab();
            self.step1c();
            self.step2();
            self.step3();
            self.step4();
            self.step5();
        }
        self.b.truncate((self.k + 1) as usize);
        String::from_utf8(self.b).expect("stemmer buffer is ASCII")
    }
}

/// Stem one token. ASCII letters are lowercased and run through the
/// algorithm; any token containing a non-ASCII-alphabetic character (digits,
/// apostrophes, non-Latin scripts) is returned unchanged, since the suffix
/// rules are only meaningful for plain English words.
pub fn porter_stem(token: &str) -> String {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_alphabetic()) {
        return token.to_string();
    }
    let b: Vec<u8> = token.bytes().map(|b| b.to_ascii_lowercase()).collect();
    let k = b.len() as i32 - 1;
    Stemmer { b, k, j: 0 }.run()
}

#[cfg(test)]
mod tests {
    use super::porter_stem;

    #[test]
    fn plurals_and_participles() {
        for (word, stem) in [
            ("caresses", "caress"),
            ("ponies", "poni"),
            ("ties", "ti"),
            ("caress", "caress"),
            ("cats", "cat"),
            ("feed", "feed"),
            ("agreed", "agre"),
            ("plastered", "plaster"),
            ("bled", "bled"),
            ("motoring", "motor"),
            ("sing", "sing"),
            ("conflated", "conflat"),
            ("troubled", "troubl"),
            ("sized", "size"),
            ("hopping", "hop"),
            ("tanned", "tan"),
            ("falling", "fall"),
            ("hissing", "hiss"),
            ("fizzed", "fizz"),
            ("failing", "fail"),
            ("filing", "file"),
        ] {
            assert_eq!(porter_stem(word), stem, "word {word:?}");
        }
    }

    #[test]
    fn y_to_i() {
        assert_eq!(porter_stem("happy"), "happi");
        assert_eq!(porter_stem("sky"), "sky");
    }

    #[test]
    fn double_to_single_suffixes() {
        for (word, stem) in [
            ("relational", "relat"),
            ("conditional", "condit"),
            ("rational", "ration"),
            ("valenci", "valenc"),
            ("hesitanci", "hesit"),
            ("digitizer", "digit"),
            ("conformabli", "conform"),
            ("radicalli", "radic"),
            ("differentli", "differ"),
            ("vileli", "vile"),
            ("analogousli", "analog"),
            ("vietnamization", "vietnam"),
            ("predication", "predic"),
            ("operator", "oper"),
            ("feudalism", "feudal"),
            ("decisiveness", "decis"),
            ("hopefulness", "hope"),
            ("callousness", "callous"),
            ("formaliti", "formal"),
            ("sensitiviti", "sensit"),
            ("sensibiliti", "sensibl"),
        ] {
            assert_eq!(porter_stem(word), stem, "word {word:?}");
        }
    }

    #[test]
    fn reference_departures() {
        // Length <= 2 words are never touched.
        assert_eq!(porter_stem("is"), "is");
        assert_eq!(porter_stem("as"), "as");
        // -bli -> -ble rather than the published -abli -> -able.
        assert_eq!(porter_stem("possibli"), "possibl");
        // -logi -> -log, gated on the stem measure: "archaeo" has m > 0 so
        // the suffix rewrites, while m("geo") = 0 leaves "geologi" alone.
        assert_eq!(porter_stem("archaeologi"), "archaeolog");
        assert_eq!(porter_stem("archaeology"), "archaeolog");
        assert_eq!(porter_stem("geologi"), "geologi");
    }

    #[test]
    fn later_steps() {
        for (word, stem) in [
            ("triplicate", "triplic"),
            ("formative", "form"),
            ("formalize", "formal"),
            ("electriciti", "electr"),
            ("electrical", "electr"),
            ("hopeful", "hope"),
            ("goodness", "good"),
            ("revival", "reviv"),
            ("allowance", "allow"),
            ("inference", "infer"),
            ("airliner", "airlin"),
            ("gyroscopic", "gyroscop"),
            ("adjustable", "adjust"),
            ("defensible", "defens"),
            ("irritant", "irrit"),
            ("replacement", "replac"),
            ("adjustment", "adjust"),
            ("dependent", "depend"),
            ("adoption", "adopt"),
            ("homologou", "homolog"),
            ("communism", "commun"),
            ("activate", "activ"),
            ("angulariti", "angular"),
            ("homologous", "homolog"),
            ("effective", "effect"),
            ("bowdlerize", "bowdler"),
            ("probate", "probat"),
            ("rate", "rate"),
            ("cease", "ceas"),
            ("controll", "control"),
            ("roll", "roll"),
        ] {
            assert_eq!(porter_stem(word), stem, "word {word:?}");
        }
    }

    #[test]
    fn non_alphabetic_tokens_pass_through() {
        assert_eq!(porter_stem("1990s"), "1990s");
        assert_eq!(porter_stem("don't"), "don't");
        assert_eq!(porter_stem("café"), "café");
        assert_eq!(porter_stem(""), "");
    }

    #[test]
    fn uppercase_input_is_lowercased() {
        assert_eq!(porter_stem("Running"), "run");
        assert_eq!(porter_stem("UNITED"), "unit");
    }
}
