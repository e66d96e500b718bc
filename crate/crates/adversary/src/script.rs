use executor::{Action, FairnessDebt, Strategy, SystemConfig};
use geometry::{parse_scalar, Point};
use protocol::Protocol;

use crate::AdversaryError;

/// Parses one action per line:
///
/// ```text
/// both
/// look A
/// finish B
/// advance A 1/2 0
/// end B 3 -1/4
/// ```
///
/// Robots are `A`/`B` or `0`/`1`; `#` starts a comment.
pub fn parse_script(text: &str) -> Result<Vec<Action>, AdversaryError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: &str| AdversaryError::ScriptSyntax { line: i + 1, reason: reason.to_string() };
        let words: Vec<&str> = line.split_whitespace().collect();
        let robot = |w: Option<&&str>| match w.copied() {
            Some("A" | "a" | "0") => Ok(0),
            Some("B" | "b" | "1") => Ok(1),
            _ => Err(err("expected robot A or B")),
        };
        let point = |ws: &[&str]| -> Result<Point, AdversaryError> {
            if ws.len() != 2 {
                return Err(err("expected two coordinates"));
            }
            let c = |w: &str| parse_scalar(w).map_err(|e| err(&e.to_string()));
            Ok(Point::new(c(ws[0])?, c(ws[1])?))
        };
        let action = match words[0].to_ascii_lowercase().as_str() {
            "both" if words.len() == 1 => Action::Both,
            "look" if words.len() == 2 => Action::Look(robot(words.get(1))?),
            "finish" if words.len() == 2 => Action::FinishCompute(robot(words.get(1))?),
            "advance" => Action::AdvanceMove(robot(words.get(1))?, point(&words[2..])?),
            "end" => Action::EndMove(robot(words.get(1))?, point(&words[2..])?),
            _ => return Err(err("unknown action")),
        };
        out.push(action);
    }
    Ok(out)
}

/// Plays a fixed list of actions, then stops.
#[derive(Debug, Clone)]
pub struct Scripted {
    actions: Vec<Action>,
    next: usize,
}

impl Scripted {
    pub fn new(actions: Vec<Action>) -> Self {
        Scripted { actions, next: 0 }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> String {
        "script".into()
    }

    fn next_action(&mut self, _: &Protocol, _: &SystemConfig, _: &FairnessDebt) -> Option<Action> {
        let a = self.actions.get(self.next).cloned();
        self.next += 1;
        a
    }
}
