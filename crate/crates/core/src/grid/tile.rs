use std::fmt;

/// One of the four sides of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    North,
    South,
    East,
    West,
}

/// A tile of an `n × n` pipe diagram.
///
/// Connections: `Blank` none, `Horizontal` W–E, `Vertical` N–S, `Cross` W–E and N–S,
/// `RTile` S–E, `JTile` W–N, `Bump` S–E and W–N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    Blank,
    Horizontal,
    Vertical,
    Cross,
    RTile,
    JTile,
    Bump,
}

impl Tile {
    pub const ALL: [Tile; 7] =
        [Tile::Blank, Tile::Horizontal, Tile::Vertical, Tile::Cross, Tile::RTile, Tile::JTile, Tile::Bump];

    pub fn has_edge(self, side: Side) -> bool {
        use Side::*;
        use Tile::*;
        match (self, side) {
            (Blank, _) => false,
            (Horizontal, s) => matches!(s, West | East),
            (Vertical, s) => matches!(s, North | South),
            (Cross | Bump, _) => true,
            (RTile, s) => matches!(s, South | East),
            (JTile, s) => matches!(s, West | North),
        }
    }

    /// Where a pipe entering from `from` leaves. Pipes only ever enter from the south or west.
    pub fn exit(self, from: Side) -> Option<Side> {
        use Side::*;
        use Tile::*;
        match (self, from) {
            (Vertical | Cross, South) => Some(North),
            (Horizontal | Cross, West) => Some(East),
            (RTile | Bump, South) => Some(East),
            (JTile | Bump, West) => Some(North),
            _ => None,
        }
    }

    /// Carries a south–east corner.
    pub(crate) fn has_r_turn(self) -> bool {
        matches!(self, Tile::RTile | Tile::Bump)
    }

    /// Carries a west–north corner.
    pub(crate) fn has_j_turn(self) -> bool {
        matches!(self, Tile::JTile | Tile::Bump)
    }

    pub fn to_char(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Horizontal => '-',
            Tile::Vertical => '|',
            Tile::Cross => '+',
            Tile::RTile => 'r',
            Tile::JTile => 'j',
            Tile::Bump => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Tile> {
        Some(match c {
            '.' => Tile::Blank,
            '-' => Tile::Horizontal,
            '|' => Tile::Vertical,
            '+' => Tile::Cross,
            'r' => Tile::RTile,
            'j' => Tile::JTile,
            'b' => Tile::Bump,
            _ => return None,
        })
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}
