use std::fmt;

/// One symbol of a glob pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    /// Any factor, possibly empty. An optional single-letter name lets a
    /// constraint refer to the factor.
    Star(Option<char>),
    /// Exactly one letter.
    AnyOne,
    /// The value `n - k`, where `n` is the length of the subject word.
    Rel(u32),
    /// A literal value.
    Abs(u32),
    /// Exactly one of the branches matches at this point.
    Alt(Vec<Vec<Token>>),
}

/// Which characterization a row belongs to. Determines the complexity the
/// row certifies and the smallest `n` for which that certification holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Complexity `n-1`; labels `L1…`.
    ClassN1,
    /// Complexity `n-2`; labels `L2…`.
    ClassN2,
    /// Complexity `n-3`; labels `T…`.
    ClassN3,
}

impl Family {
    pub fn from_label(label: &str) -> Option<Self> {
        if label.starts_with("L1") {
            Some(Family::ClassN1)
        } else if label.starts_with("L2") {
            Some(Family::ClassN2)
        } else if label.starts_with('T') {
            Some(Family::ClassN3)
        } else {
            None
        }
    }

    /// `k` such that the row certifies complexity `n - k`.
    pub fn class_offset(self) -> usize {
        match self {
            Family::ClassN1 => 1,
            Family::ClassN2 => 2,
            Family::ClassN3 => 3,
        }
    }

    /// Smallest `n` at which the row's certification is claimed.
    pub fn min_n(self) -> usize {
        match self {
            Family::ClassN1 => 2,
            Family::ClassN2 => 4,
            Family::ClassN3 => 6,
        }
    }
}

/// Complexity certified by a row, symbolically `n - offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CertifiedClass {
    pub offset: usize,
}

impl CertifiedClass {
    pub fn at(self, n: usize) -> Option<usize> {
        n.checked_sub(self.offset)
    }
}

impl fmt::Display for CertifiedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n-{}", self.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternRow {
    pub label: String,
    pub tokens: Vec<Token>,
    /// Words matching this sequence are excluded from the row.
    pub exclusion: Option<Vec<Token>>,
    /// At least one of the named stars must match a nonempty factor.
    pub nonempty: Option<Vec<char>>,
    pub family: Family,
}

impl PatternRow {
    pub fn certified_class(&self) -> CertifiedClass {
        CertifiedClass { offset: self.family.class_offset() }
    }

    pub fn min_n(&self) -> usize {
        self.family.min_n()
    }
}

pub(crate) struct Seq<'a>(pub &'a [Token]);

impl fmt::Display for Seq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Star(None) => f.write_str("*"),
            Token::Star(Some(c)) => write!(f, "*{c}"),
            Token::AnyOne => f.write_str("?"),
            Token::Rel(0) => f.write_str("n"),
            Token::Rel(k) => write!(f, "(n-{k})"),
            Token::Abs(v) => write!(f, "{v}"),
            Token::Alt(branches) => {
                f.write_str("{")?;
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{}", Seq(b))?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for PatternRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, Seq(&self.tokens))?;
        if let Some(ex) = &self.exclusion {
            write!(f, " minus {{{}}}", Seq(ex))?;
        }
        if let Some(names) = &self.nonempty {
            let names: Vec<String> = names.iter().map(|c| c.to_string()).collect();
            write!(f, " where nonempty({})", names.join("|"))?;
        }
        Ok(())
    }
}
