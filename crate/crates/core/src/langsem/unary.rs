use std::fmt;

/// Named regular languages over a one-letter alphabet `{a}`. `Less(n)` is
/// `{a^i : i <= n}`, `Even` is `(aa)*`, `ModN(n)` is `(a^n)*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UnaryRegularName {
    Empty,
    All,
    EpsilonOnly,
    APlus,
    Even,
    CoEven,
    Less(u64),
    CoLess(u64),
    LessAndEven(u64),
    LessAndCoEven(u64),
    CoLessAndEven(u64),
    CoLessAndCoEven(u64),
    SingletonLength(u64),
    LessOrEven(u64),
    LessOrCoEven(u64),
    CoLessOrEven(u64),
    CoLessOrCoEven(u64),
    Complement(Box<UnaryRegularName>),
    ModN(u64),
}

/// Whether `a^m` belongs to `name`.
pub fn named_member(name: &UnaryRegularName, m: u64) -> bool {
    use UnaryRegularName::*;
    let even = m % 2 == 0;
    match name {
        Empty => false,
        All => true,
        EpsilonOnly => m == 0,
        APlus => m >= 1,
        Even => even,
        CoEven => !even,
        Less(n) => m <= *n,
        CoLess(n) => m > *n,
        LessAndEven(n) => m <= *n && even,
        LessAndCoEven(n) => m <= *n && !even,
        CoLessAndEven(n) => m > *n && even,
        CoLessAndCoEven(n) => m > *n && !even,
        SingletonLength(n) => m == *n,
        LessOrEven(n) => m <= *n || even,
        LessOrCoEven(n) => m <= *n || !even,
        CoLessOrEven(n) => m > *n || even,
        CoLessOrCoEven(n) => m > *n || !even,
        Complement(inner) => !named_member(inner, m),
        ModN(0) => m == 0,
        ModN(n) => m % n == 0,
    }
}

impl fmt::Display for UnaryRegularName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use UnaryRegularName::*;
        match self {
            Empty => write!(f, "Empty"),
            All => write!(f, "All"),
            EpsilonOnly => write!(f, "EpsilonOnly"),
            APlus => write!(f, "APlus"),
            Even => write!(f, "Even"),
            CoEven => write!(f, "CoEven"),
            Less(n) => write!(f, "Less({n})"),
            CoLess(n) => write!(f, "CoLess({n})"),
            LessAndEven(n) => write!(f, "LessAndEven({n})"),
            LessAndCoEven(n) => write!(f, "LessAndCoEven({n})"),
            CoLessAndEven(n) => write!(f, "CoLessAndEven({n})"),
            CoLessAndCoEven(n) => write!(f, "CoLessAndCoEven({n})"),
            SingletonLength(n) => write!(f, "SingletonLength({n})"),
            LessOrEven(n) => write!(f, "LessOrEven({n})"),
            LessOrCoEven(n) => write!(f, "LessOrCoEven({n})"),
            CoLessOrEven(n) => write!(f, "CoLessOrEven({n})"),
            CoLessOrCoEven(n) => write!(f, "CoLessOrCoEven({n})"),
            Complement(inner) => write!(f, "Complement({inner})"),
            ModN(n) => write!(f, "ModN({n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use UnaryRegularName::*;

    #[test]
    fn membership_examples() {
        assert!(named_member(&LessAndEven(4), 2));
        assert!(!named_member(&LessAndEven(4), 6));
        assert!(named_member(&Complement(Box::new(Even)), 3));
        assert!(!named_member(&ModN(4), 6));
        assert!(named_member(&ModN(4), 8));
        assert!(named_member(&Less(2), 2));
        assert!(!named_member(&CoLess(2), 2));
        assert!(named_member(&EpsilonOnly, 0) && !named_member(&EpsilonOnly, 1));
        assert!(named_member(&CoLessOrCoEven(3), 1) && !named_member(&CoLessOrCoEven(3), 2));
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(CoEven.to_string(), "CoEven");
        assert_eq!(Less(2).to_string(), "Less(2)");
        assert_eq!(Complement(Box::new(ModN(3))).to_string(), "Complement(ModN(3))");
    }
}
