use std::fmt;

/// Class of an input inconsistency found by validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    DegreeOutOfRange,
    PagesNotBijection,
    SelfLoopArc,
    BindingOutOfRange,
    IsolatedBindingPoint,
    UnlabeledDegree,
    DuplicateVertexLabel,
    BindingLawMismatch,
    DegreeIdentityMismatch,
    UnlabeledCycle,
    Disconnected,
    DuplicateComponent,
    UnknownComponent,
    CutVertexMissing,
    SelfAttachment,
    MultipleStems,
    AttachmentCycle,
    SiblingsShareCutVertex,
    SharedVertexWithoutAttachment,
}

impl ViolationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationKind::DegreeOutOfRange => "degree out of range",
            ViolationKind::PagesNotBijection => "pages not a bijection",
            ViolationKind::SelfLoopArc => "arc joins a binding point to itself",
            ViolationKind::BindingOutOfRange => "binding index out of range",
            ViolationKind::IsolatedBindingPoint => "binding point without arcs",
            ViolationKind::UnlabeledDegree => "unlabeled binding point without exactly two arcs",
            ViolationKind::DuplicateVertexLabel => "vertex label used twice in one component",
            ViolationKind::BindingLawMismatch => "binding point count law violated",
            ViolationKind::DegreeIdentityMismatch => "arc endpoint count identity violated",
            ViolationKind::UnlabeledCycle => "closed cycle with no vertex",
            ViolationKind::Disconnected => "component is disconnected",
            ViolationKind::DuplicateComponent => "duplicate component id",
            ViolationKind::UnknownComponent => "attachment references unknown component",
            ViolationKind::CutVertexMissing => "cut vertex missing from a component",
            ViolationKind::SelfAttachment => "component attached to itself",
            ViolationKind::MultipleStems => "component has more than one stem",
            ViolationKind::AttachmentCycle => "attachments contain a cycle",
            ViolationKind::SiblingsShareCutVertex => "branches of one stem share a cut vertex",
            ViolationKind::SharedVertexWithoutAttachment => {
                "vertex shared by components without an attachment"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.describe(), self.detail)
    }
}

/// Accumulated validation findings. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation { kind, detail: detail.into() });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
