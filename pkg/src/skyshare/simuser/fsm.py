"""Light-response state machine with a patience budget.

Per step, in order:
  1. run counters: red_run counts consecutive red-only steps (exactly the
     red light on), green_run likewise; any other combination resets them.
  2. patience drains by down_rate while any light is displayed, recovers
     by up_rate on dark steps. Hitting zero drops any state and suspends
     all light response (frustrated) until patience climbs back to 1.
  3. in a state, the own light resets the absence counter; m consecutive
     steps without it exit the state.
  4. stateless (including just exited), a run reaching n enters that
     state. Entering green reports an event (photo request or descend
     permission, by task).

An "ignore" pilot never updates any of this.
"""


class LightFsm:
    def __init__(self, n, m, down_rate, up_rate, enabled=True):
        self.n, self.m = n, m
        self.down_rate, self.up_rate = down_rate, up_rate
        self.enabled = enabled
        self.state = None          # None | "red" | "green"
        self.red_run = 0
        self.green_run = 0
        self.absent = 0
        self.patience = 1.0
        self.frustrated = False

    def step(self, red, green):
        """Returns True when the green state is entered this step."""
        if not self.enabled:
            return False

        any_light = red or green
        if any_light:
            self.patience = max(0.0, self.patience - self.down_rate)
        else:
            self.patience = min(1.0, self.patience + self.up_rate)

        if self.frustrated:
            if self.patience >= 1.0 - 1e-12:
                self.frustrated = False
            return False

        if self.patience <= 1e-12:
            self.frustrated = True
            self.state = None
            self.red_run = self.green_run = self.absent = 0
            return False

        self.red_run = self.red_run + 1 if (red and not green) else 0
        self.green_run = self.green_run + 1 if (green and not red) else 0

        if self.state == "red":
            self.absent = 0 if red else self.absent + 1
            if self.absent >= self.m:
                self.state = None
        elif self.state == "green":
            self.absent = 0 if green else self.absent + 1
            if self.absent >= self.m:
                self.state = None

        entered_green = False
        if self.state is None:
            if self.red_run >= self.n:
                self.state = "red"
                self.absent = 0
            elif self.green_run >= self.n:
                self.state = "green"
                self.absent = 0
                entered_green = True
        return entered_green
