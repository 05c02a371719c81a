use serde::ser::{Serialize, SerializeStruct, Serializer};

/// Outcome of a decision procedure.
///
/// `Holds` and `Violated` carry query-specific payloads; a `Violated` payload is
/// always something the caller can re-check independently. `Inconclusive` is
/// returned by bounded searches that exhausted their bound without a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<H, V> {
    Holds(H),
    Violated(V),
    Inconclusive { bound: usize },
}

impl<H, V> Verdict<H, V> {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "holds",
            Verdict::Violated(_) => "violated",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Holds(_) => 0,
            Verdict::Violated(_) => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }

    pub fn holds(self) -> Option<H> {
        match self {
            Verdict::Holds(h) => Some(h),
            _ => None,
        }
    }

    pub fn violated(self) -> Option<V> {
        match self {
            Verdict::Violated(v) => Some(v),
            _ => None,
        }
    }

    pub fn map_holds<H2>(self, f: impl FnOnce(H) -> H2) -> Verdict<H2, V> {
        match self {
            Verdict::Holds(h) => Verdict::Holds(f(h)),
            Verdict::Violated(v) => Verdict::Violated(v),
            Verdict::Inconclusive { bound } => Verdict::Inconclusive { bound },
        }
    }
}

impl<H: Serialize, V: Serialize> Serialize for Verdict<H, V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Verdict", 3)?;
        st.serialize_field("outcome", self.outcome())?;
        match self {
            Verdict::Holds(h) => {
                st.serialize_field("witness", h)?;
                st.serialize_field("bound", &None::<usize>)?;
            }
            Verdict::Violated(v) => {
                st.serialize_field("witness", v)?;
                st.serialize_field("bound", &None::<usize>)?;
            }
            Verdict::Inconclusive { bound } => {
                st.serialize_field("witness", &None::<()>)?;
                st.serialize_field("bound", bound)?;
            }
        }
        st.end()
    }
}
