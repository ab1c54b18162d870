//! Group specs (`A6`, `S4`, `D5`, `C2xC2`) and cycle notation.

use std::fmt;

use normone::{GroupKind, Limits, Permutation};

/// A syntax or range error; `pos` is a 0-based byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }

    /// The input with a caret under the offending position.
    pub fn render(&self, input: &str) -> String {
        format!("{self}\n  {input}\n  {}^", " ".repeat(self.pos))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    /// `D n`, of order `2n`.
    Dihedral(usize),
    Cyclic(usize),
    CyclicProduct(Vec<usize>),
}

impl GroupSpec {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupSpec::Alternating(n) => GroupKind::Alternating(*n),
            GroupSpec::Symmetric(n) => GroupKind::Symmetric(*n),
            GroupSpec::Dihedral(n) => GroupKind::Dihedral(*n),
            GroupSpec::Cyclic(n) => GroupKind::Cyclic(*n),
            GroupSpec::CyclicProduct(f) => GroupKind::CyclicProduct(f.clone()),
        }
    }

    pub fn degree(&self) -> usize {
        self.kind().degree()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::CyclicProduct(v) => {
                let parts: Vec<String> = v.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

fn digits(s: &[u8], mut i: usize) -> Result<(usize, usize), ParseError> {
    let start = i;
    while i < s.len() && s[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return Err(ParseError::new(start, "expected a number"));
    }
    let text = std::str::from_utf8(&s[start..i]).expect("ascii digits");
    let v = text.parse::<usize>().map_err(|_| ParseError::new(start, "number too large"))?;
    Ok((v, i))
}

/// `spec := kind digits | "C" digits ("x" "C" digits)*`, kind one of
/// `A S D C`. The permutation degree must stay within `limits.max_degree`.
pub fn parse_group_spec(text: &str, limits: &Limits) -> Result<GroupSpec, ParseError> {
    let s = text.as_bytes();
    let Some(&k) = s.first() else {
        return Err(ParseError::new(0, "empty group spec"));
    };
    if !matches!(k, b'A' | b'S' | b'D' | b'C') {
        return Err(ParseError::new(0, "expected one of A, S, D, C"));
    }
    let (n, mut i) = digits(s, 1)?;
    let spec = match k {
        b'A' | b'S' | b'D' if i < s.len() => {
            return Err(ParseError::new(i, "unexpected trailing input"));
        }
        b'A' => {
            if n < 3 {
                return Err(ParseError::new(1, "A n needs n >= 3"));
            }
            GroupSpec::Alternating(n)
        }
        b'S' => {
            if n < 2 {
                return Err(ParseError::new(1, "S n needs n >= 2"));
            }
            GroupSpec::Symmetric(n)
        }
        b'D' => {
            if n < 3 {
                return Err(ParseError::new(1, "D n needs n >= 3 (use C2xC2 for the Klein four-group)"));
            }
            GroupSpec::Dihedral(n)
        }
        b'C' => {
            if n < 1 {
                return Err(ParseError::new(1, "C n needs n >= 1"));
            }
            let mut factors = vec![n];
            while i < s.len() {
                if s[i] != b'x' {
                    return Err(ParseError::new(i, "expected 'x' between cyclic factors"));
                }
                if s.get(i + 1) != Some(&b'C') {
                    return Err(ParseError::new(i + 1, "expected 'C'"));
                }
                let (m, j) = digits(s, i + 2)?;
                if m < 1 {
                    return Err(ParseError::new(i + 2, "C n needs n >= 1"));
                }
                factors.push(m);
                i = j;
            }
            if factors.len() == 1 {
                GroupSpec::Cyclic(n)
            } else {
                GroupSpec::CyclicProduct(factors)
            }
        }
        _ => unreachable!("kind checked above"),
    };
    let degree = spec.degree();
    if degree > limits.max_degree {
        return Err(ParseError::new(1, format!("degree {degree} exceeds the maximum {}", limits.max_degree)));
    }
    Ok(spec)
}

/// One permutation in cycle notation, `(1 2 3)(4 5)` or `()`. Cycles are
/// composed left to right. Without `degree` the degree is the largest point
/// mentioned (1 for `()`).
pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Permutation, ParseError> {
    let (cycles, end) = cycles_at(text.as_bytes(), 0)?;
    let rest = skip_ws(text.as_bytes(), end);
    if rest < text.len() {
        return Err(ParseError::new(rest, "unexpected trailing input"));
    }
    build(text, cycles, degree)
}

/// A comma-separated list of permutations: `(1 2 3 4 5),(1 4)(5 6)`.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>, ParseError> {
    let s = text.as_bytes();
    let mut i = 0;
    let mut all: Vec<(usize, Cycles)> = Vec::new();
    loop {
        let start = skip_ws(s, i);
        let (cycles, end) = cycles_at(s, start)?;
        all.push((start, cycles));
        i = skip_ws(s, end);
        if i >= s.len() {
            break;
        }
        if s[i] != b',' {
            return Err(ParseError::new(i, "expected ',' between generators"));
        }
        i += 1;
    }
    let max_point = all.iter().flat_map(|(_, c)| c.iter().flat_map(|(_, pts)| pts.iter().copied())).max().unwrap_or(1);
    let degree = degree.unwrap_or(max_point);
    all.into_iter().map(|(_, c)| build(text, c, Some(degree))).collect()
}

/// Cycles with the offset of their opening parenthesis.
type Cycles = Vec<(usize, Vec<usize>)>;

fn skip_ws(s: &[u8], mut i: usize) -> usize {
    while i < s.len() && s[i].is_ascii_whitespace() {
        i += 1;
    }
    i
}

/// Parses `cycle+ | "()"` starting at `i`; returns the cycles with their
/// offsets and the position after the last `)`.
fn cycles_at(s: &[u8], i: usize) -> Result<(Cycles, usize), ParseError> {
    let mut i = skip_ws(s, i);
    if s.get(i) != Some(&b'(') {
        return Err(ParseError::new(i, "expected '('"));
    }
    let j = skip_ws(s, i + 1);
    if s.get(j) == Some(&b')') {
        return Ok((Vec::new(), j + 1));
    }
    let mut cycles = Vec::new();
    while s.get(i) == Some(&b'(') {
        let open = i;
        i += 1;
        let mut pts: Vec<usize> = Vec::new();
        loop {
            i = skip_ws(s, i);
            match s.get(i) {
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(b',') if !pts.is_empty() => {
                    i += 1;
                    continue;
                }
                Some(b'-') => return Err(ParseError::new(i, "points must be positive")),
                Some(c) if c.is_ascii_digit() => {
                    let (p, j) = digits(s, i)?;
                    if p == 0 {
                        return Err(ParseError::new(i, "points start at 1"));
                    }
                    if pts.contains(&p) {
                        return Err(ParseError::new(i, format!("point {p} repeated in a cycle")));
                    }
                    pts.push(p);
                    i = j;
                }
                Some(_) => return Err(ParseError::new(i, "expected a point or ')'")),
                None => return Err(ParseError::new(i, "unclosed cycle")),
            }
        }
        if pts.len() < 2 {
            return Err(ParseError::new(open, "a cycle needs at least two points"));
        }
        cycles.push((open, pts));
        i = skip_ws(s, i);
    }
    Ok((cycles, i))
}

fn build(text: &str, cycles: Vec<(usize, Vec<usize>)>, degree: Option<usize>) -> Result<Permutation, ParseError> {
    let max_point = cycles.iter().flat_map(|(_, c)| c.iter().copied()).max().unwrap_or(1);
    let degree = degree.unwrap_or(max_point);
    if let Some((pos, _)) = cycles.iter().find(|(_, c)| c.iter().any(|&p| p > degree)) {
        return Err(ParseError::new(*pos, format!("point beyond degree {degree}")));
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|(_, c)| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs).map_err(|e| ParseError::new(text.len(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> Result<GroupSpec, ParseError> {
        parse_group_spec(s, &Limits::default())
    }

    #[test]
    fn group_specs() {
        assert_eq!(spec("A6").unwrap(), GroupSpec::Alternating(6));
        assert_eq!(spec("C2xC2").unwrap(), GroupSpec::CyclicProduct(vec![2, 2]));
        assert_eq!(spec("D4").unwrap().kind().build().unwrap().order(), 8);
        assert_eq!(spec("C5").unwrap(), GroupSpec::Cyclic(5));
        assert_eq!(spec("C2xC3xC4").unwrap().to_string(), "C2xC3xC4");
    }

    #[test]
    fn spec_errors_have_positions() {
        assert_eq!(spec("").unwrap_err().pos, 0);
        assert_eq!(spec("B4").unwrap_err().pos, 0);
        assert_eq!(spec("A").unwrap_err().pos, 1);
        assert_eq!(spec("A6x").unwrap_err().pos, 2);
        assert_eq!(spec("C2xD2").unwrap_err().pos, 3);
        assert_eq!(spec("C2x").unwrap_err().pos, 3);
        assert_eq!(spec("C2xC").unwrap_err().pos, 4);
        assert!(spec("A17").unwrap_err().msg.contains("degree"));
        assert!(spec("D2").is_err());
        let e = spec("C2yC2").unwrap_err();
        assert_eq!(e.render("C2yC2").lines().last().unwrap(), "    ^");
    }

    #[test]
    fn cycles() {
        let p = parse_cycles("(1 2 3)(4 5)", None).unwrap();
        assert_eq!(p.images(), vec![2, 3, 1, 5, 4]);
        assert!(parse_cycles("()", None).unwrap().is_identity());
        assert_eq!(parse_cycles("()", Some(4)).unwrap().degree(), 4);
        assert_eq!(parse_cycles("(1,2, 3)", None).unwrap(), parse_cycles("(1 2 3)", None).unwrap());
        // (1 2) then (2 3): 1 -> 2 -> 3, 2 -> 1, 3 -> 2
        let q = parse_cycles("(1 2)(2 3)", None).unwrap();
        assert_eq!(q, Permutation::cycle(3, &[1, 3, 2]).unwrap());
        assert_eq!(q, &Permutation::cycle(3, &[1, 2]).unwrap() * &Permutation::cycle(3, &[2, 3]).unwrap());
    }

    #[test]
    fn cycle_errors() {
        assert!(parse_cycles("(1 2 1)", None).unwrap_err().msg.contains("repeated"));
        assert_eq!(parse_cycles("(0 1)", None).unwrap_err().pos, 1);
        assert_eq!(parse_cycles("(1 -2)", None).unwrap_err().pos, 3);
        assert!(parse_cycles("(1 2", None).is_err());
        assert!(parse_cycles("(1)", None).is_err());
        assert!(parse_cycles("(1 2) x", None).is_err());
        assert!(parse_cycles("(1 7)", Some(6)).is_err());
    }

    #[test]
    fn generator_lists() {
        let g = parse_generators("(1 2 3 4 5),(1 4)(5 6)", None).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|p| p.degree() == 6));
        let h = parse_generators("(1,2,3), (2,3,4)", Some(4)).unwrap();
        assert_eq!(h[1], Permutation::cycle(4, &[2, 3, 4]).unwrap());
        assert_eq!(parse_generators("(1 2) (3 4)", None).unwrap().len(), 1);
        assert_eq!(parse_generators("(1 2);(3 4)", None).unwrap_err().pos, 5);
    }
}
